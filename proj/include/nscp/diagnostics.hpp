#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nscp/samplers.hpp"

namespace nscp {

/// Ripley's K estimator K(r) = (|S|/n^2) sum_{i != j} 1{ ||x_i - x_j|| <= r }
/// over ordered pairs, no edge correction. Radii must be positive ascending;
/// needs n >= 2.
std::vector<double> ripley_k(const PointPattern& pattern, const std::vector<double>& radii);

/// Translation-corrected variant for exploratory use; not part of the
/// calibration checks.
std::vector<double> ripley_k_translation(const PointPattern& pattern,
                                         const std::vector<double>& radii);

/// Pair correlation J(r) = K'(r) / (2 pi r), with K' from three-point
/// Lagrange differentiation on the radius grid (one-sided at the ends).
std::vector<double> pcf_from_k(const std::vector<double>& radii,
                               const std::vector<double>& k_values);

struct PcfResult {
  std::vector<double> radii;
  std::vector<double> k_values;
  std::vector<double> j_values;
};

/// K and J on a radius grid; smooth_bandwidth > 0 box-smooths K before
/// differencing.
PcfResult pcf(const PointPattern& pattern, const std::vector<double>& radii,
              double smooth_bandwidth = 0.0);

/// Shortest contiguous interval holding ceil(level * N) sorted samples;
/// ties resolve to the earliest window. Needs at least 100 samples.
std::pair<double, double> hpd(std::vector<double> samples, double level = 0.95);

struct ParameterSummary {
  std::string name;
  double mean;
  double hpd_lo;
  double hpd_hi;
};

struct TraceSummary {
  std::vector<ParameterSummary> parameters;
  AcceptanceRates acceptance;
  std::vector<std::size_t> parent_count_trace;
};

TraceSummary trace_summary(const ChainOutput& output, double level = 0.95);

}  // namespace nscp
