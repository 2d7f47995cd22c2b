#pragma once

#include <string>
#include <vector>

#include "nscp/risk.hpp"
#include "nscp/samplers.hpp"

namespace nscp::io {

/// Round-trip-exact decimal rendering used by all CSV writers.
std::string format_double(double value);

void write_xy_csv(const std::string& path, const std::vector<Point>& points);
std::vector<Point> read_xy_csv(const std::string& path);

/// Header: iter,alpha,omega,kappa,theta1,theta2,m
void write_samples_csv(const std::string& path, const std::vector<ParamSample>& samples);
std::vector<ParamSample> read_samples_csv(const std::string& path);

/// ESRI ASCII grid; NaN cells become the NODATA value.
void write_ascii_grid(const std::string& path, const IntensityRaster& raster,
                      double nodata = -9999.0);

/// GeoJSON FeatureCollection of point features with a radius_m property.
std::string circles_to_geojson(const std::vector<Circle>& circles);

/// FNV-1a over a string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace nscp::io
