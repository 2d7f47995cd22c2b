#pragma once

#include <limits>
#include <utility>

#include "nscp/geometry.hpp"

namespace nscp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Cap on each point's local interaction energy, fixed by the parent
/// density: h(C) = kappa^m prod_i exp{min(sum_{j!=i} log phi(D_ij), 2)}.
inline constexpr double kLocalEnergyCap = 2.0;

struct PastingConstants {
  double d1;  // branch-join distance
  double d2;  // tail offset
};

/// Solves for the constants that join the parabolic branch of the
/// interaction function to its 1 + 4/(D-d2)^2 tail with matching value and
/// slope at d1. Throws std::domain_error for theta1 <= 1 (no attraction:
/// the parabola never rises above the tail) and std::invalid_argument if
/// the bracket degenerates numerically.
PastingConstants solve_pasting(double theta1, double theta2);

/// Model parameters Theta = {alpha, omega, kappa, theta1, theta2} with the
/// derived smooth-pasting constants cached. Immutable value type.
struct ModelParams {
  double alpha;   // expected offsprings per parent
  double omega;   // Gaussian kernel sd, meters
  double kappa;   // parent intensity, points per m^2
  double theta1;  // peak interaction value (>1 attracts)
  double theta2;  // peak location, meters
  double d1;      // derived
  double d2;      // derived

  /// Validates, clamps theta1 into the attractive regime (theta1 values at
  /// or below 1 become 1 + 1e-6) and solves the pasting constants.
  static ModelParams create(double alpha, double omega, double kappa, double theta1,
                            double theta2);

  /// Same parameters with new (kappa, theta1, theta2); re-solves pasting.
  ModelParams with_parent_params(double kappa, double theta1, double theta2) const;
  ModelParams with_offspring_params(double alpha, double omega) const;
};

/// Interaction function phi(D) between two parents at distance D:
/// parabola theta1 - (sqrt(theta1)/theta2 (D - theta2))^2 on (0, d1],
/// 1 + 4/(D - d2)^2 beyond. Throws std::domain_error for D <= 0.
double phi(double distance, const ModelParams& params);

/// log phi with the conventions the samplers need: distance 0 (coincident
/// parents) gives -inf rather than an exception.
double log_phi(double distance, const ModelParams& params);

/// Unnormalized log parent density log h(C | kappa, theta1, theta2):
/// m log kappa + sum_i min(sum_{j != i} log phi(D_ij), 2). Empty C gives 0;
/// coincident parents give -inf.
double log_h_parent(const PointPattern& parents, const ModelParams& params);

/// log of the isotropic Gaussian kernel density at squared distance d2.
inline double log_gaussian_kernel(double dist_sq, double omega) {
  return -std::log(2.0 * M_PI * omega * omega) - dist_sq / (2.0 * omega * omega);
}

/// The sum over offsprings of log sum_i alpha k(x_j - c_i, omega),
/// exposed separately so scale checks can target it. -inf when X is
/// nonempty and C empty; 0 when X is empty.
double log_offspring_product(const PointPattern& offspring, const PointPattern& parents,
                             double alpha, double omega);

/// Offspring log likelihood log f(X | C, alpha, omega) =
/// |S| - alpha sum_i mass(c_i) + log_offspring_product. The |S| constant is
/// retained so values are comparable across runs on one window.
double log_f_offspring(const PointPattern& offspring, const PointPattern& parents,
                       double alpha, double omega);

struct PriorRange {
  double lo;
  double hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Uniform prior box. Defaults tie omega and theta2 to the window scale
/// sqrt(|S|): each parent spawns 3-30 visits inside roughly one
/// administrative neighborhood.
struct PriorSpec {
  PriorRange alpha{3.0, 30.0};
  PriorRange omega{0.0, 0.0};
  PriorRange kappa{1e-10, 1e-6};
  PriorRange theta1{1.0, 3.0};
  PriorRange theta2{0.0, 0.0};

  static PriorSpec defaults_for_area(double window_area);

  bool contains(const ModelParams& p) const {
    return alpha.contains(p.alpha) && omega.contains(p.omega) && kappa.contains(p.kappa) &&
           theta1.contains(p.theta1) && theta2.contains(p.theta2);
  }

  void validate() const;
};

/// log of the joint target up to the intractable Z and the marginal of X:
/// log f(X|C,alpha,omega) + log h(C|kappa,theta1,theta2) inside the prior
/// box, -inf outside. Uniform priors contribute only a constant.
double log_joint(const PointPattern& offspring, const PointPattern& parents,
                 const ModelParams& params, const PriorSpec& priors);

}  // namespace nscp
