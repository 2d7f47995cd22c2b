#include "doctest.h"

#include <cmath>

#include "nscp/geometry.hpp"
#include "test_util.hpp"

using namespace nscp;

TEST_CASE("window areas") {
  CHECK(Window::rectangle(0, 1, 0, 1).area() == doctest::Approx(1.0));
  CHECK(Window::rectangle(0, 24600, 0, 24600).area() == doctest::Approx(6.0516e8));
  CHECK(Window::polygon({{0, 0}, {1, 0}, {0, 1}}).area() == doctest::Approx(0.5));
}

TEST_CASE("window construction rejects degenerate shapes") {
  CHECK_THROWS(Window::rectangle(1, 0, 0, 1));
  CHECK_THROWS(Window::rectangle(0, 1, 1, 1));
  CHECK_THROWS(Window::polygon({{0, 0}, {1, 1}}));
  // bow-tie
  CHECK_THROWS(Window::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
}

TEST_CASE("polygon area invariant to vertex rotation and translation") {
  const std::vector<Point> verts{{0, 0}, {2, 0}, {2.5, 1}, {1, 2}, {-0.5, 1}};
  const double base = Window::polygon(verts).area();
  std::vector<Point> rotated(verts.begin() + 2, verts.end());
  rotated.insert(rotated.end(), verts.begin(), verts.begin() + 2);
  CHECK(Window::polygon(rotated).area() == doctest::Approx(base));
  std::vector<Point> shifted = verts;
  for (auto& p : shifted) {
    p.x += 137.0;
    p.y -= 42.0;
  }
  CHECK(Window::polygon(shifted).area() == doctest::Approx(base));
}

TEST_CASE("containment with boundary inside") {
  const Window square = Window::rectangle(0, 1, 0, 1);
  CHECK(square.contains({0.5, 0.5}));
  CHECK_FALSE(square.contains({1.5, 0.5}));
  CHECK(square.contains({1.0, 0.5}));  // boundary

  const Window lshape =
      Window::polygon({{0, 0}, {1, 0}, {1, 0.6}, {0.5, 0.6}, {0.5, 1}, {0, 1}});
  CHECK(lshape.contains({0.25, 0.9}));
  CHECK_FALSE(lshape.contains({0.75, 0.9}));   // inside the notch
  CHECK(lshape.contains({0.5, 0.8}));          // on an edge
  CHECK(lshape.contains({1.0, 0.6}));          // on a vertex
}

TEST_CASE("uniform sampling stays inside and is unbiased") {
  Rng rng(42);
  const Window square = Window::rectangle(0, 1, 0, 1);
  double sx = 0, sy = 0;
  const int n = 1000000;
  int in_sub = 0;
  for (int i = 0; i < n; ++i) {
    const Point p = square.sample_uniform(rng);
    sx += p.x;
    sy += p.y;
    if (p.x < 0.3 && p.y < 0.5) ++in_sub;
  }
  CHECK(std::abs(sx / n - 0.5) < 0.01);
  CHECK(std::abs(sy / n - 0.5) < 0.01);
  // counts in a sub-rectangle proportional to its area (3.5 sigma band)
  const double p_sub = 0.15;
  CHECK(std::abs(in_sub / static_cast<double>(n) - p_sub) <
        3.5 * std::sqrt(p_sub * (1 - p_sub) / n));

  // chi-square over a 4x4 grid of equal-area cells, 99.9% critical value
  {
    Rng rng2(43);
    int counts[16] = {0};
    const int draws = 160000;
    for (int i = 0; i < draws; ++i) {
      const Point p = square.sample_uniform(rng2);
      const int cx = std::min(3, static_cast<int>(p.x * 4.0));
      const int cy = std::min(3, static_cast<int>(p.y * 4.0));
      ++counts[4 * cy + cx];
    }
    const double expected = draws / 16.0;
    double chi_sq = 0.0;
    for (int c : counts) chi_sq += (c - expected) * (c - expected) / expected;
    CHECK(chi_sq < 37.70);  // chi^2_{0.999, 15}
  }

  const Window thin = Window::rectangle(0, 1, 0, 1e-6);
  for (int i = 0; i < 1000; ++i) CHECK(thin.contains(thin.sample_uniform(rng)));

  const Window lshape =
      Window::polygon({{0, 0}, {1, 0}, {1, 0.6}, {0.5, 0.6}, {0.5, 1}, {0, 1}});
  for (int i = 0; i < 1000; ++i) CHECK(lshape.contains(lshape.sample_uniform(rng)));
}

TEST_CASE("gaussian mass: rectangle closed form") {
  const Window big = Window::rectangle(0, 1e6, 0, 1e6);
  CHECK(big.gaussian_mass({5e5, 5e5}, 100.0) == doctest::Approx(1.0).epsilon(1e-9));
  // center on an edge midpoint of a half-plane-like window
  CHECK(big.gaussian_mass({0.0, 5e5}, 100.0) == doctest::Approx(0.5).epsilon(1e-6));
  // corner: quarter mass
  CHECK(big.gaussian_mass({0.0, 0.0}, 100.0) == doctest::Approx(0.25).epsilon(1e-6));
  // against the independent quadrature oracle off-center
  const Window unit = Window::rectangle(0, 1, 0, 1);
  const double got = unit.gaussian_mass({0.3, 0.8}, 0.4);
  const double want = testutil::gl_gaussian_mass_rect(unit.bounding_box(), {0.3, 0.8}, 0.4);
  CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("gaussian mass: polygon quadrature") {
  // a square polygon must agree with the rectangle closed form
  const Window rect = Window::rectangle(0, 1, 0, 1);
  const Window squarish = Window::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  for (const Point c : {Point{0.5, 0.5}, Point{0.2, 0.7}, Point{0.9, 0.1}}) {
    CHECK(squarish.gaussian_mass(c, 0.3) ==
          doctest::Approx(rect.gaussian_mass(c, 0.3)).epsilon(2e-4));
  }

  // deep interior of a large polygon
  const Window bigpoly =
      Window::polygon({{0, 0}, {1e5, 0}, {1e5, 1e5}, {0, 1e5}});
  CHECK(bigpoly.gaussian_mass({5e4, 5e4}, 50.0) == doctest::Approx(1.0).epsilon(1e-9));

  // tilted polygon against Monte Carlo from the Gaussian
  const Window pent = Window::polygon(
      {{0.05, 0.1}, {0.95, 0.2}, {0.9, 0.85}, {0.5, 1.0}, {0.08, 0.8}});
  const Point center{0.45, 0.55};
  const double omega = 0.35;
  Rng rng(7);
  const int n = 2000000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const Point p{center.x + rng.normal(0, omega), center.y + rng.normal(0, omega)};
    if (pent.contains(p)) ++inside;
  }
  const double mc = inside / static_cast<double>(n);
  CHECK(std::abs(pent.gaussian_mass(center, omega) - mc) < 2e-3);
}

TEST_CASE("gaussian mass monotone along an outward ray") {
  const Window square = Window::rectangle(0, 1, 0, 1);
  double prev = 2.0;
  for (double t = 0.0; t <= 3.0; t += 0.1) {
    const double mass = square.gaussian_mass({0.5 + t, 0.5 + 0.7 * t}, 0.4);
    CHECK(mass <= prev + 1e-12);
    prev = mass;
  }
  // polygon: start outside on a ray that recedes from every window point
  // ((1-qx) + 0.5(0.65-qy) > 0 for all window points q); quadrature route,
  // so tolerate grid-alignment wiggle
  Window lshape =
      Window::polygon({{0, 0}, {1, 0}, {1, 0.6}, {0.5, 0.6}, {0.5, 1}, {0, 1}});
  lshape.set_mass_resolution(1024);
  prev = 2.0;
  for (double t = 0.7; t <= 3.0; t += 0.1) {
    const double mass = lshape.gaussian_mass({0.3 + t, 0.3 + 0.5 * t}, 0.3);
    CHECK(mass <= prev + 2e-4);
    prev = mass;
  }
}

TEST_CASE("point pattern validates containment") {
  const Window square = Window::rectangle(0, 1, 0, 1);
  CHECK_NOTHROW(PointPattern({{0.5, 0.5}, {1.0, 1.0}}, square));
  CHECK_THROWS(PointPattern({{0.5, 0.5}, {1.2, 0.5}}, square));
  CHECK(PointPattern({}, square).empty());
}
