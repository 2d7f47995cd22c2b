#include "nscp/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nscp {

namespace {

// Slope matching eliminates d2: (d1 - d2)^3 = 4 theta2^2 / (theta1 (d1 - theta2)).
double tail_gap(double d1, double theta1, double theta2) {
  return std::cbrt(4.0 * theta2 * theta2 / (theta1 * (d1 - theta2)));
}

double parabola(double d, double theta1, double theta2) {
  const double s = std::sqrt(theta1) / theta2 * (d - theta2);
  return theta1 - s * s;
}

}  // namespace

PastingConstants solve_pasting(double theta1, double theta2) {
  if (!(theta2 > 0.0)) throw std::invalid_argument("solve_pasting: theta2 must be > 0");
  if (!(theta1 > 1.0))
    throw std::domain_error("solve_pasting: no-attraction degenerate (theta1 <= 1)");

  // d1 lives where the parabola is above 1 and decreasing.
  const double lo0 = theta2;
  const double hi0 = theta2 * (1.0 + std::sqrt((theta1 - 1.0) / theta1));

  auto residual = [&](double d1) {
    const double gap = tail_gap(d1, theta1, theta2);
    return parabola(d1, theta1, theta2) - (1.0 + 4.0 / (gap * gap));
  };

  // residual -> theta1 - 1 > 0 at lo0+ and < 0 at hi0; bisect.
  double lo = lo0, hi = hi0;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding width
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  const double d1 = 0.5 * (lo + hi);
  if (!(d1 > lo0) || !(d1 < hi0))
    throw std::invalid_argument("solve_pasting: bisection bracket failure");
  const double gap = tail_gap(d1, theta1, theta2);
  const double d2 = d1 - gap;

  const double value_gap = std::abs(parabola(d1, theta1, theta2) - (1.0 + 4.0 / (gap * gap)));
  const double slope_f = -2.0 * theta1 / (theta2 * theta2) * (d1 - theta2);
  const double slope_g = -8.0 / (gap * gap * gap);
  if (value_gap > 1e-9 * theta1 || std::abs(slope_f - slope_g) > 1e-9)
    throw std::invalid_argument("solve_pasting: residual tolerance not met");
  return {d1, d2};
}

ModelParams ModelParams::create(double alpha, double omega, double kappa, double theta1,
                                double theta2) {
  if (!(alpha > 0.0) || !(omega > 0.0) || !(kappa > 0.0) || !(theta2 > 0.0))
    throw std::invalid_argument("ModelParams: alpha, omega, kappa, theta2 must be > 0");
  if (!(theta1 >= 1.0)) throw std::invalid_argument("ModelParams: theta1 must be >= 1");
  const double t1 = std::max(theta1, 1.0 + 1e-6);
  const PastingConstants pc = solve_pasting(t1, theta2);
  return ModelParams{alpha, omega, kappa, t1, theta2, pc.d1, pc.d2};
}

ModelParams ModelParams::with_parent_params(double kappa_, double theta1_,
                                            double theta2_) const {
  return create(alpha, omega, kappa_, theta1_, theta2_);
}

ModelParams ModelParams::with_offspring_params(double alpha_, double omega_) const {
  ModelParams p = *this;
  if (!(alpha_ > 0.0) || !(omega_ > 0.0))
    throw std::invalid_argument("ModelParams: alpha, omega must be > 0");
  p.alpha = alpha_;
  p.omega = omega_;
  return p;
}

double phi(double distance, const ModelParams& params) {
  if (!(distance > 0.0)) throw std::domain_error("phi: distance must be > 0");
  if (distance <= params.d1) return parabola(distance, params.theta1, params.theta2);
  const double t = distance - params.d2;
  return 1.0 + 4.0 / (t * t);
}

double log_phi(double distance, const ModelParams& params) {
  if (distance <= 0.0) return kNegInf;
  const double v = phi(distance, params);
  return v > 0.0 ? std::log(v) : kNegInf;
}

double log_h_parent(const PointPattern& parents, const ModelParams& params) {
  const auto& pts = parents.points();
  const std::size_t m = pts.size();
  if (m == 0) return 0.0;

  double total = static_cast<double>(m) * std::log(params.kappa);
  for (std::size_t i = 0; i < m; ++i) {
    double local = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double lp = log_phi(std::sqrt(squared_distance(pts[i], pts[j])), params);
      if (lp == kNegInf) return kNegInf;
      local += lp;
    }
    total += std::min(local, kLocalEnergyCap);
  }
  return total;
}

double log_offspring_product(const PointPattern& offspring, const PointPattern& parents,
                             double alpha, double omega) {
  const auto& xs = offspring.points();
  if (xs.empty()) return 0.0;
  const auto& cs = parents.points();
  if (cs.empty()) return kNegInf;

  const double log_alpha = std::log(alpha);
  double total = 0.0;
  std::vector<double> terms(cs.size());
  for (const Point& x : xs) {
    double max_term = kNegInf;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      terms[i] = log_alpha + log_gaussian_kernel(squared_distance(x, cs[i]), omega);
      max_term = std::max(max_term, terms[i]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    total += max_term + std::log(acc);
  }
  return total;
}

double log_f_offspring(const PointPattern& offspring, const PointPattern& parents,
                       double alpha, double omega) {
  if (!(alpha > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("log_f_offspring: alpha, omega must be > 0");
  if (!(offspring.window() == parents.window()))
    throw std::invalid_argument("log_f_offspring: X and C must share one window");

  const Window& win = offspring.window();
  double total = win.area();
  for (const Point& c : parents.points()) total -= alpha * win.gaussian_mass(c, omega);
  if (offspring.empty()) return total;
  const double prod = log_offspring_product(offspring, parents, alpha, omega);
  return prod == kNegInf ? kNegInf : total + prod;
}

PriorSpec PriorSpec::defaults_for_area(double window_area) {
  if (!(window_area > 0.0))
    throw std::invalid_argument("PriorSpec: window area must be > 0");
  const double root = std::sqrt(window_area);
  PriorSpec spec;
  spec.omega = {root / 70.0, root / 25.0};
  spec.theta2 = {root / 70.0, root / 25.0};
  spec.validate();
  return spec;
}

void PriorSpec::validate() const {
  auto check = [](const PriorRange& r, const char* name) {
    if (!(r.lo > 0.0) || !(r.lo < r.hi))
      throw std::invalid_argument(std::string("PriorSpec: bad bounds for ") + name);
  };
  check(alpha, "alpha");
  check(omega, "omega");
  check(kappa, "kappa");
  check(theta2, "theta2");
  if (!(theta1.lo >= 1.0) || !(theta1.lo < theta1.hi))
    throw std::invalid_argument("PriorSpec: bad bounds for theta1");
}

double log_joint(const PointPattern& offspring, const PointPattern& parents,
                 const ModelParams& params, const PriorSpec& priors) {
  if (!priors.contains(params)) return kNegInf;
  const double lf = log_f_offspring(offspring, parents, params.alpha, params.omega);
  if (lf == kNegInf) return kNegInf;
  const double lh = log_h_parent(parents, params);
  return lh == kNegInf ? kNegInf : lf + lh;
}

}  // namespace nscp
