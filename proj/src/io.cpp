#include "nscp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nscp::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_xy_csv(const std::string& path, const std::vector<Point>& points) {
  std::ofstream out = open_out(path);
  out << "x,y\n";
  for (const Point& p : points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

std::vector<Point> read_xy_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<Point> points;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad xy row in '" + path + "': " + line);
    points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return points;
}

void write_samples_csv(const std::string& path, const std::vector<ParamSample>& samples) {
  std::ofstream out = open_out(path);
  out << "iter,alpha,omega,kappa,theta1,theta2,m\n";
  for (const ParamSample& s : samples) {
    out << s.iter << ',' << format_double(s.alpha) << ',' << format_double(s.omega) << ','
        << format_double(s.kappa) << ',' << format_double(s.theta1) << ','
        << format_double(s.theta2) << ',' << s.m << '\n';
  }
}

std::vector<ParamSample> read_samples_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<ParamSample> samples;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    double v[7];
    for (int i = 0; i < 7; ++i) {
      if (!std::getline(ss, field, ','))
        throw std::runtime_error("bad samples row in '" + path + "': " + line);
      v[i] = std::stod(field);
    }
    samples.push_back({static_cast<std::uint64_t>(v[0]), v[1], v[2], v[3], v[4], v[5],
                       static_cast<std::size_t>(v[6])});
  }
  return samples;
}

void write_ascii_grid(const std::string& path, const IntensityRaster& raster, double nodata) {
  std::ofstream out = open_out(path);
  out << "ncols " << raster.ncols << '\n';
  out << "nrows " << raster.nrows << '\n';
  out << "xllcorner " << format_double(raster.x_origin) << '\n';
  out << "yllcorner " << format_double(raster.y_origin) << '\n';
  out << "cellsize " << format_double(raster.cell_size) << '\n';
  out << "NODATA_value " << format_double(nodata) << '\n';
  for (std::size_t r = raster.nrows; r-- > 0;) {  // north row first
    for (std::size_t c = 0; c < raster.ncols; ++c) {
      const double v = raster.at(c, r);
      out << (std::isnan(v) ? format_double(nodata) : format_double(v));
      out << (c + 1 == raster.ncols ? '\n' : ' ');
    }
  }
}

std::string circles_to_geojson(const std::vector<Circle>& circles) {
  nlohmann::json features = nlohmann::json::array();
  for (const Circle& c : circles) {
    features.push_back({{"type", "Feature"},
                        {"geometry",
                         {{"type", "Point"}, {"coordinates", {c.center.x, c.center.y}}}},
                        {"properties", {{"radius_m", c.radius}}}});
  }
  nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(2);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace nscp::io
