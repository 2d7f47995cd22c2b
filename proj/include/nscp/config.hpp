#pragma once

#include <string>

#include "nscp/ingest.hpp"
#include "nscp/risk.hpp"
#include "nscp/samplers.hpp"

namespace nscp {

struct PcfConfig {
  double r_min = 100.0;
  double r_max = 2000.0;
  std::size_t count = 20;
  double smooth_bandwidth = 0.0;
};

/// Everything a CLI run needs, loaded from a versioned JSON file. Window
/// and priors are materialized at load (window-scale defaults filled in)
/// and echoed back so the manifest records exactly what ran.
struct RunConfig {
  int schema_version = 1;
  Window window = Window::rectangle(0.0, 24600.0, 0.0, 24600.0);
  PriorSpec priors = PriorSpec::defaults_for_area(24600.0 * 24600.0);
  ProposalSpec proposal = ProposalSpec::defaults_for(priors);

  RunOptions mcmc{40000, 20000, 1, 0, true};
  std::size_t chains = 1;

  std::string end_date;
  IngestOptions ingest;

  double cell_size = 200.0;
  RiskThreshold risk;

  PcfConfig pcf;

  int mass_resolution = 256;
  std::size_t simulate_steps = 500000;
  int scenario = 3;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  /// Canonical JSON echo of the materialized configuration.
  std::string echo_json() const;
  std::string hash() const;
};

Window window_from_json_text(const std::string& text);

}  // namespace nscp
