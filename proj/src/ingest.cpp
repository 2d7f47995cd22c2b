#include "nscp/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace nscp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
  while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

int days_in_month(int year, int month) {
  static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return table[month - 1];
}

}  // namespace

int days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const int era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<int>(doe) - 719468;
}

int parse_visit_date(const std::string& token, int default_year) {
  const std::string t = trim(token);
  if (!all_digits(t) || (t.size() != 4 && t.size() != 8))
    throw std::invalid_argument("unparseable date '" + token + "'");
  int year, month, day;
  if (t.size() == 8) {
    year = std::stoi(t.substr(0, 4));
    month = std::stoi(t.substr(4, 2));
    day = std::stoi(t.substr(6, 2));
  } else {
    year = default_year;
    month = std::stoi(t.substr(0, 2));
    day = std::stoi(t.substr(2, 2));
  }
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
    throw std::invalid_argument("impossible calendar date '" + token + "'");
  return days_from_civil(year, month, day);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

std::vector<VisitRecord> parse_visits(std::istream& in, const IngestOptions& options,
                                      std::size_t* skipped_bad) {
  std::vector<VisitRecord> records;
  std::string line;
  std::size_t row = 0;
  std::size_t bad = 0;
  const ColumnMap& cm = options.columns;
  const int max_col =
      std::max({cm.patient, cm.date, cm.address, cm.transport, cm.description, cm.x, cm.y});

  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    try {
      const std::vector<std::string> fields = split_csv_line(line);
      if (static_cast<int>(fields.size()) <= max_col)
        throw std::invalid_argument("too few columns");
      VisitRecord rec;
      rec.patient_id = fields[cm.patient];
      rec.date_raw = fields[cm.date];
      rec.date_days = parse_visit_date(rec.date_raw, options.year);
      rec.address = fields[cm.address];
      rec.transport = fields[cm.transport];
      rec.description = fields[cm.description];
      std::size_t pos = 0;
      rec.x = std::stod(fields[cm.x], &pos);
      if (pos != fields[cm.x].size()) throw std::invalid_argument("trailing junk in x");
      rec.y = std::stod(fields[cm.y], &pos);
      if (pos != fields[cm.y].size()) throw std::invalid_argument("trailing junk in y");
      if (!std::isfinite(rec.x) || !std::isfinite(rec.y))
        throw std::invalid_argument("non-finite coordinates");
      records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      if (options.strict)
        throw std::runtime_error("ingest: row " + std::to_string(row) + ": " + e.what());
      ++bad;
    }
  }
  if (skipped_bad) *skipped_bad = bad;
  return records;
}

IngestResult ingest(const std::string& csv_path, const std::string& end_date,
                    const Window& window, const IngestOptions& options) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("ingest: cannot open '" + csv_path + "'");

  IngestCounts counts;
  std::vector<VisitRecord> records = parse_visits(in, options, &counts.skipped_bad_rows);
  counts.rows_read = records.size() + counts.skipped_bad_rows;

  const int end = parse_visit_date(end_date, options.year);
  const int begin = end - 13;  // two-week span, inclusive

  using RowKey = std::tuple<std::string, int, std::string, std::string, std::string, double,
                            double>;
  std::set<RowKey> seen;
  std::vector<Point> points;
  for (const VisitRecord& rec : records) {
    if (rec.date_days < begin || rec.date_days > end) {
      ++counts.dropped_by_date;
      continue;
    }
    if (!options.keep_duplicates) {
      RowKey key{rec.patient_id, rec.date_days, rec.address, rec.transport, rec.description,
                 rec.x, rec.y};
      if (!seen.insert(std::move(key)).second) {
        ++counts.dropped_duplicates;
        continue;
      }
    }
    if (!window.contains({rec.x, rec.y})) {
      ++counts.dropped_by_window;
      continue;
    }
    points.push_back({rec.x, rec.y});
  }
  counts.kept = points.size();
  return IngestResult{PointPattern(std::move(points), window), counts};
}

}  // namespace nscp
