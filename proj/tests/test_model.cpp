#include "doctest.h"

#include <cmath>

#include "nscp/model.hpp"
#include "test_util.hpp"

using namespace nscp;

namespace {

double parabola_branch(double d, double t1, double t2) {
  const double s = std::sqrt(t1) / t2 * (d - t2);
  return t1 - s * s;
}

double tail_branch(double d, double d2) { return 1.0 + 4.0 / ((d - d2) * (d - d2)); }

}  // namespace

TEST_CASE("solve_pasting matches the dense grid-scan oracle") {
  const double t1 = 1.5, t2 = 600.0;
  const PastingConstants got = solve_pasting(t1, t2);
  const testutil::PastingScan want = testutil::pasting_grid_scan(t1, t2);
  CHECK(std::abs(got.d1 - want.d1) < 1e-6 * got.d1);
  CHECK(std::abs(got.d2 - want.d2) < 1e-6 * got.d1);
  CHECK(got.d1 > t2);
  CHECK(got.d1 < t2 * (1.0 + std::sqrt((t1 - 1.0) / t1)));
  CHECK(got.d2 < got.d1);
}

TEST_CASE("pasting residuals meet the defining property") {
  for (auto [t1, t2] : {std::pair{1.2, 500.0}, {2.0, 351.4}, {2.9, 980.0}, {1.01, 700.0}}) {
    const PastingConstants pc = solve_pasting(t1, t2);
    CHECK(std::abs(parabola_branch(pc.d1, t1, t2) - tail_branch(pc.d1, pc.d2)) <=
          1e-9 * t1);
    const double slope_f = -2.0 * t1 / (t2 * t2) * (pc.d1 - t2);
    const double gap = pc.d1 - pc.d2;
    const double slope_g = -8.0 / (gap * gap * gap);
    CHECK(std::abs(slope_f - slope_g) <= 1e-9);
  }
}

TEST_CASE("pasting bracket collapses as theta1 -> 1") {
  const PastingConstants pc = solve_pasting(1.0 + 1e-6, 600.0);
  CHECK(pc.d1 > 600.0);
  CHECK(pc.d1 < 600.0 * (1.0 + 1.1e-3));
  CHECK_THROWS_AS(solve_pasting(1.0, 600.0), std::domain_error);
  CHECK_THROWS_AS(solve_pasting(0.8, 600.0), std::domain_error);
}

TEST_CASE("phi piecewise values") {
  const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, 1.5, 600.0);
  CHECK(phi(600.0, p) == doctest::Approx(1.5).epsilon(1e-12));  // peak
  CHECK(phi(1e-9, p) < 1e-10);                                  // hard repulsion at 0+
  CHECK_THROWS_AS(phi(0.0, p), std::domain_error);
  CHECK_THROWS_AS(phi(-1.0, p), std::domain_error);
  // tail formula with the solved d2
  const double d = 10.0 * 600.0;
  CHECK(phi(d, p) == doctest::Approx(1.0 + 4.0 / ((d - p.d2) * (d - p.d2))).epsilon(1e-14));
  // above 1 beyond the join, decaying toward 1 from above
  double prev = phi(p.d1 + 1e-9, p);
  for (double dd = p.d1 + 10.0; dd < 20000.0; dd += 500.0) {
    const double v = phi(dd, p);
    CHECK(v > 1.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("phi smooth at the join") {
  // the symmetric difference across the join recovers the shared slope up
  // to the curvature mismatch term h (g'' - f'') / 4
  for (auto [t1, t2] : {std::pair{1.5, 600.0}, {2.5, 400.0}, {1.1, 900.0}}) {
    const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, t1, t2);
    const double h = 1e-4 * t2;
    const double slope = -2.0 * t1 / (t2 * t2) * (p.d1 - t2);
    const double gap = p.d1 - p.d2;
    const double f2 = -2.0 * t1 / (t2 * t2);
    const double g2 = 24.0 / (gap * gap * gap * gap);
    const double sym = (phi(p.d1 + h, p) - phi(p.d1 - h, p)) / (2.0 * h);
    CHECK(std::abs(sym - slope) < h * (std::abs(f2) + std::abs(g2)));
    // branch formulas agree at the join to solver tolerance
    CHECK(std::abs(parabola_branch(p.d1, t1, t2) - tail_branch(p.d1, p.d2)) < 1e-9 * t1);
  }
}

TEST_CASE("model params validation") {
  CHECK_THROWS(ModelParams::create(-1.0, 400.0, 1e-7, 1.5, 600.0));
  CHECK_THROWS(ModelParams::create(5.0, 0.0, 1e-7, 1.5, 600.0));
  CHECK_THROWS(ModelParams::create(5.0, 400.0, 1e-7, 0.9, 600.0));
  // theta1 = 1 is legal input, clamped into the attractive regime
  const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, 1.0, 600.0);
  CHECK(p.theta1 == doctest::Approx(1.0 + 1e-6));
  CHECK(p.theta2 < p.d1);
  CHECK(p.d2 < p.d1);
}

TEST_CASE("log_h_parent basics") {
  const Window win = Window::rectangle(0, 10000, 0, 10000);
  const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, 1.5, 600.0);

  CHECK(log_h_parent(PointPattern({}, win), p) == 0.0);
  CHECK(log_h_parent(PointPattern({{100, 100}}, win), p) ==
        doctest::Approx(std::log(p.kappa)));

  // two points at the interaction peak
  const PointPattern pair({{4000, 4000}, {4600, 4000}}, win);
  CHECK(log_h_parent(pair, p) ==
        doctest::Approx(2.0 * std::log(p.kappa) + 2.0 * std::log(1.5)).epsilon(1e-12));

  // coincident points carry zero density
  const PointPattern stacked({{4000, 4000}, {4000, 4000}}, win);
  CHECK(log_h_parent(stacked, p) == kNegInf);
}

TEST_CASE("log_h_parent energy cap activates") {
  const Window win = Window::rectangle(0, 10000, 0, 10000);
  const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, 3.0, 600.0);
  // equilateral triangle with side theta2: each local sum is 2 log 3 > 2
  const double s = 600.0;
  const PointPattern tri(
      {{4000, 4000}, {4000 + s, 4000}, {4000 + s / 2, 4000 + s * std::sqrt(3.0) / 2}}, win);
  CHECK(2.0 * std::log(3.0) > kLocalEnergyCap);
  CHECK(log_h_parent(tri, p) ==
        doctest::Approx(3.0 * std::log(p.kappa) + 3.0 * kLocalEnergyCap).epsilon(1e-12));

  // with theta1 <= 3 a single pair never hits the cap
  const PointPattern pair({{4000, 4000}, {4600, 4000}}, win);
  CHECK(log_h_parent(pair, p) ==
        doctest::Approx(2.0 * std::log(p.kappa) + 2.0 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("log_h_parent invariant to rigid motions") {
  const Window win = Window::rectangle(-1e5, 1e5, -1e5, 1e5);
  const ModelParams p = ModelParams::create(5.0, 400.0, 1e-7, 1.5, 600.0);
  std::vector<Point> pts{{0, 0}, {500, 100}, {-300, 700}, {900, -200}};
  const double base = log_h_parent(PointPattern(pts, win), p);

  std::vector<Point> shifted = pts;
  for (auto& q : shifted) {
    q.x += 1234.5;
    q.y -= 987.2;
  }
  CHECK(log_h_parent(PointPattern(shifted, win), p) == doctest::Approx(base).epsilon(1e-12));

  const double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<Point> rotated;
  for (const auto& q : pts) rotated.push_back({c * q.x - s * q.y, s * q.x + c * q.y});
  CHECK(log_h_parent(PointPattern(rotated, win), p) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("log_f_offspring closed cases") {
  const Window win = Window::rectangle(0, 1000, 0, 1000);
  const double area = win.area();
  const double alpha = 5.0, omega = 10.0;  // kernel support far from edges

  // no offspring, one deep parent
  CHECK(log_f_offspring(PointPattern({}, win), PointPattern({{500, 500}}, win), alpha,
                        omega) == doctest::Approx(area - alpha).epsilon(1e-14));

  // single offspring exactly at the parent
  const double expected =
      area - alpha + std::log(alpha / (2.0 * M_PI * omega * omega));
  CHECK(log_f_offspring(PointPattern({{500, 500}}, win), PointPattern({{500, 500}}, win),
                        alpha, omega) == doctest::Approx(expected).epsilon(1e-14));

  // both empty: the reference-process constant survives
  CHECK(log_f_offspring(PointPattern({}, win), PointPattern({}, win), alpha, omega) ==
        doctest::Approx(area));

  // offspring without parents: zero density
  CHECK(log_f_offspring(PointPattern({{500, 500}}, win), PointPattern({}, win), alpha,
                        omega) == kNegInf);
}

TEST_CASE("log_f_offspring matches the naive oracle") {
  const Window win = Window::rectangle(0, 1, 0, 1);
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Point> cs, xs;
    const int m = 1 + static_cast<int>(rng.uniform_index(4));
    const int n = static_cast<int>(rng.uniform_index(9));
    for (int i = 0; i < m; ++i) cs.push_back(win.sample_uniform(rng));
    for (int j = 0; j < n; ++j) xs.push_back(win.sample_uniform(rng));
    const double alpha = rng.uniform(1.0, 8.0);
    const double omega = rng.uniform(0.05, 0.5);
    const PointPattern X(xs, win), C(cs, win);
    CHECK(log_f_offspring(X, C, alpha, omega) ==
          doctest::Approx(testutil::naive_log_f_offspring(X, C, alpha, omega))
              .epsilon(1e-12));
  }
}

TEST_CASE("log_f_offspring exchangeable in point order") {
  const Window win = Window::rectangle(0, 1, 0, 1);
  const std::vector<Point> cs{{0.2, 0.3}, {0.7, 0.6}, {0.5, 0.9}};
  const std::vector<Point> xs{{0.25, 0.33}, {0.68, 0.61}, {0.51, 0.88}, {0.4, 0.5}};
  const double base =
      log_f_offspring(PointPattern(xs, win), PointPattern(cs, win), 4.0, 0.2);
  std::vector<Point> cs2{cs[2], cs[0], cs[1]};
  std::vector<Point> xs2{xs[3], xs[1], xs[0], xs[2]};
  CHECK(log_f_offspring(PointPattern(xs2, win), PointPattern(cs2, win), 4.0, 0.2) ==
        doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("kernel product term scales with the Jacobian") {
  const Window win = Window::rectangle(0, 1000, 0, 1000);
  const Window win2 = Window::rectangle(0, 2000, 0, 2000);
  const std::vector<Point> cs{{200, 300}, {700, 600}};
  const std::vector<Point> xs{{210, 310}, {680, 590}, {400, 500}};
  std::vector<Point> cs2, xs2;
  for (auto& c : cs) cs2.push_back({2 * c.x, 2 * c.y});
  for (auto& x : xs) xs2.push_back({2 * x.x, 2 * x.y});
  const double alpha = 4.0, omega = 50.0;
  const double t1 = log_offspring_product(PointPattern(xs, win), PointPattern(cs, win),
                                          alpha, omega);
  const double t2 = log_offspring_product(PointPattern(xs2, win2), PointPattern(cs2, win2),
                                          alpha, 2.0 * omega);
  CHECK(t2 == doctest::Approx(t1 - xs.size() * std::log(4.0)).epsilon(1e-13));
}

TEST_CASE("prior spec defaults and log_joint support") {
  const double area = 6.0516e8;
  const PriorSpec priors = PriorSpec::defaults_for_area(area);
  CHECK(priors.omega.lo == doctest::Approx(std::sqrt(area) / 70.0));
  CHECK(priors.omega.hi == doctest::Approx(std::sqrt(area) / 25.0));
  CHECK(priors.theta2.lo == doctest::Approx(std::sqrt(area) / 70.0));
  CHECK(priors.alpha.lo == 3.0);
  CHECK(priors.alpha.hi == 30.0);
  CHECK(priors.kappa.lo == 1e-10);
  CHECK(priors.kappa.hi == 1e-6);
  CHECK(priors.theta1.lo == 1.0);
  CHECK(priors.theta1.hi == 3.0);

  const Window win = Window::rectangle(0, 24600, 0, 24600);
  const PointPattern X({{5000, 5000}, {5200, 5100}}, win);
  const PointPattern C({{5100, 5050}}, win);
  const ModelParams inside = ModelParams::create(5.0, 400.0, 1e-7, 1.5, 600.0);
  const ModelParams outside = ModelParams::create(40.0, 400.0, 1e-7, 1.5, 600.0);
  CHECK(std::isfinite(log_joint(X, C, inside, priors)));
  CHECK(log_joint(X, C, outside, priors) == kNegInf);

  // identity ratio and decomposition
  CHECK(log_joint(X, C, inside, priors) - log_joint(X, C, inside, priors) == 0.0);
  const PointPattern C2({{5100, 5050}, {9000, 9000}}, win);
  const double direct = log_joint(X, C2, inside, priors) - log_joint(X, C, inside, priors);
  const double decomposed =
      (log_h_parent(C2, inside) - log_h_parent(C, inside)) +
      (log_f_offspring(X, C2, inside.alpha, inside.omega) -
       log_f_offspring(X, C, inside.alpha, inside.omega));
  CHECK(direct == doctest::Approx(decomposed).epsilon(1e-10));
}
