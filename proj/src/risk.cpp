#include "nscp/risk.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nscp/model.hpp"

namespace nscp {

IntensityRaster intensity_map(const PointPattern& parents_hat, double alpha_hat,
                              double omega_hat, double cell_size) {
  if (!(alpha_hat > 0.0) || !(omega_hat > 0.0) || !(cell_size > 0.0))
    throw std::invalid_argument("intensity_map: alpha, omega, cell_size must be > 0");

  const Window& window = parents_hat.window();
  const BoundingBox& bb = window.bounding_box();
  IntensityRaster raster;
  raster.x_origin = bb.x_min;
  raster.y_origin = bb.y_min;
  raster.cell_size = cell_size;
  raster.ncols = static_cast<std::size_t>(std::ceil(bb.width() / cell_size));
  raster.nrows = static_cast<std::size_t>(std::ceil(bb.height() / cell_size));
  raster.values.assign(raster.ncols * raster.nrows,
                       std::numeric_limits<double>::quiet_NaN());

  const auto& parents = parents_hat.points();
  const double w2 = omega_hat * omega_hat;
  const double norm = alpha_hat / (2.0 * M_PI * w2);
  for (std::size_t row = 0; row < raster.nrows; ++row) {
    for (std::size_t col = 0; col < raster.ncols; ++col) {
      const Point p = raster.cell_center(col, row);
      if (!window.contains(p)) continue;
      double g = 0.0;
      for (const Point& c : parents) {
        const double e = squared_distance(p, c) / (2.0 * w2);
        if (e < 700.0) g += norm * std::exp(-e);
      }
      raster.at(col, row) = g;
    }
  }
  return raster;
}

IntensityRaster high_risk_mask(const IntensityRaster& raster, const RiskThreshold& threshold) {
  if (!(threshold.days > 0.0) || !(threshold.area_unit > 0.0))
    throw std::invalid_argument("high_risk_mask: days and area_unit must be > 0");
  IntensityRaster mask = raster;
  for (double& v : mask.values) {
    if (std::isnan(v)) continue;
    v = (v / threshold.days) * threshold.area_unit > threshold.patients_per_day ? 1.0 : 0.0;
  }
  return mask;
}

std::vector<Circle> risk_boundaries(const PointPattern& parents_hat, double theta2_hat,
                                    double omega_hat) {
  if (!(theta2_hat > 0.0) || !(omega_hat >= 0.0))
    throw std::invalid_argument("risk_boundaries: need theta2 > 0, omega >= 0");
  const double radius = theta2_hat + 1.96 * omega_hat;
  std::vector<Circle> circles;
  circles.reserve(parents_hat.size());
  for (const Point& c : parents_hat.points()) circles.push_back({c, radius});
  return circles;
}

}  // namespace nscp
