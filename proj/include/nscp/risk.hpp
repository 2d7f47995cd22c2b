#pragma once

#include <vector>

#include "nscp/geometry.hpp"

namespace nscp {

/// Gridded evaluation of the offspring intensity (points per m^2 over the
/// modeled two-week span). Row 0 is the southernmost row; cells outside
/// the window hold NaN and export as NODATA.
struct IntensityRaster {
  double x_origin = 0.0;  // lower-left corner
  double y_origin = 0.0;
  double cell_size = 0.0;
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  std::vector<double> values;  // row-major from the southern row

  double& at(std::size_t col, std::size_t row) { return values[row * ncols + col]; }
  double at(std::size_t col, std::size_t row) const { return values[row * ncols + col]; }
  Point cell_center(std::size_t col, std::size_t row) const {
    return {x_origin + (static_cast<double>(col) + 0.5) * cell_size,
            y_origin + (static_cast<double>(row) + 0.5) * cell_size};
  }
};

/// Offspring intensity g(x) = sum_i alpha k(x - c_i, omega) evaluated at
/// cell centers over the window's bounding box.
IntensityRaster intensity_map(const PointPattern& parents_hat, double alpha_hat,
                              double omega_hat, double cell_size);

struct RiskThreshold {
  double days = 14.0;               // span the intensity was fitted over
  double area_unit = 1.427e6;       // average administrative-unit area, m^2
  double patients_per_day = 1.0;    // flag above this expected daily count
};

/// 0/1 raster flagging cells whose daily intensity exceeds the threshold:
/// (g / days) * area_unit > patients_per_day, strict. NaN cells stay NaN.
IntensityRaster high_risk_mask(const IntensityRaster& raster,
                               const RiskThreshold& threshold = {});

struct Circle {
  Point center;
  double radius;
};

/// One circle per fitted parent with radius theta2_hat + 1.96 omega_hat:
/// how far new events can plausibly reach from known spreading events.
std::vector<Circle> risk_boundaries(const PointPattern& parents_hat, double theta2_hat,
                                    double omega_hat);

}  // namespace nscp
