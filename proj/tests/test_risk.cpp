#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nscp/io.hpp"
#include "nscp/risk.hpp"
#include "test_util.hpp"

using namespace nscp;

TEST_CASE("intensity at a parent-centered cell is the kernel mode") {
  const Window win = Window::rectangle(0, 100, 0, 100);
  const double alpha = 4.0, omega = 3.0;
  // (55,55) is the center of cell (5,5) at cell size 10
  const PointPattern parents({{55, 55}}, win);
  const IntensityRaster r = intensity_map(parents, alpha, omega, 10.0);
  CHECK(r.ncols == 10);
  CHECK(r.nrows == 10);
  CHECK(r.at(5, 5) == doctest::Approx(alpha / (2.0 * M_PI * omega * omega)).epsilon(1e-12));
}

TEST_CASE("intensity is linear in parents") {
  const Window win = Window::rectangle(0, 100, 0, 100);
  const PointPattern one({{40, 60}}, win);
  const PointPattern two({{40, 60}, {40, 60}}, win);
  const IntensityRaster ra = intensity_map(one, 5.0, 4.0, 5.0);
  const IntensityRaster rb = intensity_map(two, 5.0, 4.0, 5.0);
  REQUIRE(ra.values.size() == rb.values.size());
  for (std::size_t i = 0; i < ra.values.size(); ++i) {
    if (std::isnan(ra.values[i])) {
      CHECK(std::isnan(rb.values[i]));
    } else {
      CHECK(rb.values[i] == doctest::Approx(2.0 * ra.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("raster integral matches the analytic kernel mass") {
  const Window win = Window::rectangle(0, 4000, 0, 4000);
  const double alpha = 4.5, omega = 400.0, cell = 100.0;  // cell = omega/4
  const PointPattern parents({{1000, 1200}, {2600, 2200}, {150, 3800}}, win);
  const IntensityRaster r = intensity_map(parents, alpha, omega, cell);
  double integral = 0.0;
  for (double v : r.values)
    if (!std::isnan(v)) integral += v * cell * cell;
  double expected = 0.0;
  for (const Point& c : parents.points())
    expected += alpha * win.gaussian_mass(c, omega);
  CHECK(integral == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("empty parents give an all-zero raster") {
  const Window win = Window::rectangle(0, 100, 0, 100);
  const IntensityRaster r = intensity_map(PointPattern({}, win), 4.0, 3.0, 10.0);
  for (double v : r.values) CHECK(v == 0.0);
}

TEST_CASE("high-risk mask thresholding") {
  IntensityRaster r;
  r.cell_size = 10;
  r.ncols = 3;
  r.nrows = 1;
  const double boundary = 14.0 / 1.427e6;  // exactly one patient/day/area unit
  r.values = {boundary, boundary * 1.0001, 0.0};
  const IntensityRaster mask = high_risk_mask(r);
  CHECK(mask.values[0] == 0.0);  // strict inequality at the boundary
  CHECK(mask.values[1] == 1.0);
  CHECK(mask.values[2] == 0.0);

  // zero raster: empty mask
  IntensityRaster zero = r;
  zero.values = {0.0, 0.0, 0.0};
  for (double v : high_risk_mask(zero).values) CHECK(v == 0.0);

  // monotone in the threshold: lower threshold flags a superset
  RiskThreshold lower;
  lower.patients_per_day = 0.5;
  const IntensityRaster loose = high_risk_mask(r, lower);
  for (std::size_t i = 0; i < r.values.size(); ++i)
    if (mask.values[i] == 1.0) CHECK(loose.values[i] == 1.0);
}

TEST_CASE("risk boundary radii") {
  const Window win = Window::rectangle(0, 10000, 0, 10000);
  const PointPattern parents({{1000, 1000}, {4000, 6000}, {9000, 2000}}, win);

  const auto circles = risk_boundaries(parents, 568.40, 358.55);
  REQUIRE(circles.size() == parents.size());
  const double expected = 568.40 + 1.96 * 358.55;
  for (const Circle& c : circles) {
    CHECK(c.radius == expected);  // exact arithmetic
    CHECK(c.radius == doctest::Approx(1271.16).epsilon(1e-5));
  }

  // omega -> 0 limit leaves theta2
  CHECK(risk_boundaries(parents, 700.0, 0.0)[0].radius == 700.0);
}

TEST_CASE("boundary circles cover every raster cell within reach of a parent") {
  const Window win = Window::rectangle(0, 2000, 0, 2000);
  const PointPattern parents({{500, 500}, {1500, 900}}, win);
  const double theta2 = 300.0, omega = 100.0;
  const auto circles = risk_boundaries(parents, theta2, omega);
  const IntensityRaster r = intensity_map(parents, 4.0, omega, 50.0);
  const double radius = theta2 + 1.96 * omega;
  for (std::size_t row = 0; row < r.nrows; ++row) {
    for (std::size_t col = 0; col < r.ncols; ++col) {
      const Point p = r.cell_center(col, row);
      double nearest = 1e18;
      for (const Point& c : parents.points())
        nearest = std::min(nearest, std::sqrt(squared_distance(p, c)));
      if (nearest <= radius) {
        bool covered = false;
        for (const Circle& c : circles)
          covered = covered ||
                    std::sqrt(squared_distance(p, c.center)) <= c.radius;
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("ascii grid format") {
  IntensityRaster r;
  r.x_origin = 10.0;
  r.y_origin = 20.0;
  r.cell_size = 5.0;
  r.ncols = 2;
  r.nrows = 2;
  r.values = {1.0, 2.0, std::numeric_limits<double>::quiet_NaN(), 4.0};  // south row first

  const std::string path = "test_grid.asc";
  io::write_ascii_grid(path, r);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() ==
        "ncols 2\nnrows 2\nxllcorner 10\nyllcorner 20\ncellsize 5\n"
        "NODATA_value -9999\n-9999 4\n1 2\n");
  std::remove(path.c_str());
}

TEST_CASE("risk boundary geojson") {
  const Window win = Window::rectangle(0, 100, 0, 100);
  const auto circles = risk_boundaries(PointPattern({{10, 20}}, win), 30.0, 5.0);
  const std::string text = io::circles_to_geojson(circles);
  CHECK(text.find("\"FeatureCollection\"") != std::string::npos);
  CHECK(text.find("\"radius_m\"") != std::string::npos);
  CHECK(text.find("39.8") != std::string::npos);  // 30 + 1.96*5
}
