#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nscp/geometry.hpp"

namespace nscp {

/// Column positions in a contact-tracing CSV, defaulting to the usual
/// export order: patient id, date, address, transport, description, x, y.
struct ColumnMap {
  int patient = 0;
  int date = 1;
  int address = 2;
  int transport = 3;
  int description = 4;
  int x = 5;
  int y = 6;
};

/// One row of a contact-tracing export. Coordinates are projected meters;
/// the address string is carried through but unused by the model.
struct VisitRecord {
  std::string patient_id;
  std::string date_raw;
  int date_days = 0;  // days since the civil epoch
  std::string address;
  std::string transport;
  std::string description;
  double x = 0.0;
  double y = 0.0;
};

struct IngestOptions {
  int year = 2020;  // applied to 4-digit MMDD dates
  bool strict = true;
  bool keep_duplicates = false;
  bool has_header = true;
  ColumnMap columns;
};

struct IngestCounts {
  std::size_t rows_read = 0;
  std::size_t kept = 0;
  std::size_t dropped_by_date = 0;
  std::size_t dropped_by_window = 0;
  std::size_t dropped_duplicates = 0;
  std::size_t skipped_bad_rows = 0;
};

struct IngestResult {
  PointPattern pattern;
  IngestCounts counts;
};

int days_from_civil(int year, int month, int day);

/// Parses YYYYMMDD, or MMDD with the supplied year. Throws on anything
/// unparseable or an impossible calendar date.
int parse_visit_date(const std::string& token, int default_year);

std::vector<std::string> split_csv_line(const std::string& line);

/// Reads rows; in strict mode an unparseable row raises with its row
/// number, otherwise it is skipped and counted.
std::vector<VisitRecord> parse_visits(std::istream& in, const IngestOptions& options,
                                      std::size_t* skipped_bad = nullptr);

/// Full ingest: keep visits dated within [end_date - 13 days, end_date],
/// drop exact duplicate rows (unless kept by option), drop rows outside
/// the window, and emit the remaining coordinates as a point pattern.
IngestResult ingest(const std::string& csv_path, const std::string& end_date,
                    const Window& window, const IngestOptions& options = {});

}  // namespace nscp
