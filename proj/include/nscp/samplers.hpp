#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nscp/model.hpp"
#include "nscp/rng.hpp"

namespace nscp {

/// Death-ratio convention for the birth-death kernels. Paper weights a
/// death from m points by (m-1)/|S|; Standard uses m/|S|, the form in
/// exact detailed balance with the target.
enum class BdConvention { Paper, Standard };

struct ParamSteps {
  double alpha = 0.0;
  double omega = 0.0;
  double kappa = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Random-walk and birth-death proposal settings. Step sizes are Gaussian
/// standard deviations on the natural scale; proposals reflect at the
/// prior bounds so the kernel stays symmetric.
struct ProposalSpec {
  ParamSteps steps;
  double birth_prob = 1.0 / 3.0;
  double death_prob = 1.0 / 3.0;  // remainder proposes a move
  double aux_steps_per_parent = 1.0;
  std::size_t aux_min_steps = 100;
  BdConvention convention = BdConvention::Paper;

  /// Steps default to 5% of each prior range.
  static ProposalSpec defaults_for(const PriorSpec& priors);
  void validate() const;
};

enum class BdKind { Birth, Death, Move };

struct BdOutcome {
  BdKind kind;
  bool accepted;
  double log_ratio;
};

struct BdCounts {
  std::uint64_t birth_proposed = 0, birth_accepted = 0;
  std::uint64_t death_proposed = 0, death_accepted = 0;
  std::uint64_t move_proposed = 0, move_accepted = 0;
};

/// Birth-death MCMC over a parent configuration. With no offspring data
/// attached the stationary target is the parent density f(C|kappa,theta1,
/// theta2) (the auxiliary-variable sampler); with data it is
/// f(X|C,alpha,omega) f(C|kappa,theta1,theta2) (the latent-parent update).
/// Per-point interaction sums and per-offspring kernel sums are cached so
/// an elementary step costs O(m + n).
class BirthDeathSampler {
 public:
  BirthDeathSampler(const Window& window, const ModelParams& params,
                    std::vector<Point> initial, const ProposalSpec& proposal);
  BirthDeathSampler(const Window& window, const ModelParams& params,
                    std::vector<Point> initial, const ProposalSpec& proposal,
                    std::vector<Point> offspring);

  BdOutcome step(Rng& rng);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const BdCounts& counts() const { return counts_; }
  const ModelParams& params() const { return params_; }

  /// Swaps in new parent-interaction parameters; rebuilds the cached sums.
  void set_parent_params(const ModelParams& params);
  /// Swaps in new offspring parameters; rebuilds kernel caches when omega
  /// changes.
  void set_offspring_params(double alpha, double omega);

  /// log f(X|C,alpha,omega) from the caches (posterior mode only).
  double cached_log_f() const;

  /// Log acceptance ratios for crafted proposals; no randomness consumed,
  /// no state change. Useful for diagnostics and balance checks.
  double probe_birth(const Point& xi) { return birth_log_ratio(xi); }
  double probe_death(std::size_t idx) { return death_log_ratio(idx); }
  double probe_move(std::size_t idx, const Point& xi) { return move_log_ratio(idx, xi); }

 private:
  void rebuild_interaction();
  void rebuild_kernel();
  double kernel(const Point& x, const Point& c) const;

  double birth_log_ratio(const Point& xi);
  double death_log_ratio(std::size_t idx);
  double move_log_ratio(std::size_t idx, const Point& xi);
  void apply_birth(const Point& xi);
  void apply_death(std::size_t idx);
  void apply_move(std::size_t idx, const Point& xi);

  Window window_;
  ModelParams params_;
  ProposalSpec proposal_;
  bool posterior_ = false;
  double area_ = 0.0;
  double log_area_ = 0.0;

  std::vector<Point> points_;
  std::vector<double> local_;  // per-parent capped-energy inputs sum_{j!=i} log phi

  std::vector<Point> offspring_;
  std::vector<double> kernel_sum_;   // per-offspring sum_i k(x_j - c_i)
  std::vector<double> parent_mass_;  // per-parent Gaussian window mass
  double mass_sum_ = 0.0;
  std::size_t uncovered_ = 0;  // offspring with kernel_sum == 0

  // proposal scratch, installed on acceptance
  std::vector<double> add_contrib_, del_contrib_;
  std::vector<double> k_add_, k_new_;
  double mass_scratch_ = 0.0;
  double s_new_ = 0.0;

  BdCounts counts_;
};

/// One elementary step of the auxiliary-variable sampler (stationary law
/// f(C|kappa,theta1,theta2)). Convenience wrapper over BirthDeathSampler.
struct BdStepResult {
  PointPattern parents;
  BdOutcome outcome;
};
BdStepResult bd_step_parent_prior(const PointPattern& parents, const ModelParams& params,
                                  Rng& rng, const ProposalSpec& proposal);

/// One elementary step of the latent-parent update (stationary law
/// f(X|C,alpha,omega) f(C|kappa,theta1,theta2)).
BdStepResult bd_step_parent_posterior(const PointPattern& parents, const PointPattern& offspring,
                                      const ModelParams& params, Rng& rng,
                                      const ProposalSpec& proposal);

/// Reflects x into [lo, hi] by folding at the bounds.
double reflect_into(double x, double lo, double hi);

struct MhResult {
  ModelParams params;
  bool accepted;
  double log_ratio;
};

/// Joint reflected random-walk update of (alpha, omega) against the
/// offspring likelihood; uniform priors and the symmetric kernel cancel.
MhResult mh_update_offspring_params(const PointPattern& offspring, const PointPattern& parents,
                                    const ModelParams& current, const PriorSpec& priors,
                                    const ParamSteps& steps, Rng& rng);

struct DmhResult {
  ModelParams params;
  bool accepted;
  double log_ratio;
  std::vector<Point> aux;
};

/// The DMH log acceptance ratio for a given auxiliary configuration:
/// log h(C|proposed) + log h(A|current) - log h(C|current) - log h(A|proposed).
double dmh_log_ratio(const PointPattern& parents, const PointPattern& aux,
                     const ModelParams& current, const ModelParams& proposed);

/// Double Metropolis-Hastings update of (kappa, theta1, theta2). Proposes
/// by reflected random walk, simulates an auxiliary configuration at the
/// proposed parameters by a birth-death chain started from C, and accepts
/// with the ratio h(C|th')h(A|th) / (h(C|th)h(A|th')) so the intractable
/// normalizing function cancels.
DmhResult dmh_update_parent_params(const PointPattern& parents, const ModelParams& current,
                                   const PriorSpec& priors, const ProposalSpec& proposal,
                                   Rng& rng);

/// Robbins-Monro step-size adaptation toward a target acceptance rate.
/// Used during burn-in only; frozen afterwards to preserve the chain law.
class StepSizeTuner {
 public:
  explicit StepSizeTuner(double target = 0.23) : target_(target) {}
  void update(double accept_prob);
  double scale() const;

 private:
  double target_;
  double log_scale_ = 0.0;
  long iterations_ = 0;
};

struct ChainState {
  ModelParams params;
  PointPattern parents;
  std::uint64_t iteration = 0;
};

struct ParamSample {
  std::uint64_t iter;
  double alpha, omega, kappa, theta1, theta2;
  std::size_t m;
};

struct AcceptanceRates {
  double offspring = 0.0;
  double parent_params = 0.0;
  double birth = 0.0;
  double death = 0.0;
  double move = 0.0;
};

struct ChainOutput {
  std::vector<ParamSample> samples;  // one record per post-burn-in iteration
  PointPattern final_parents;
  AcceptanceRates acceptance;
  std::uint64_t seed = 0;
  std::string config_echo;
};

struct RunOptions {
  std::uint64_t iterations = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 1;
  std::size_t parent_sweeps_per_iter = 0;  // 0: max(m, 20) elementary steps
  bool adapt = true;
};

/// Three-block chain: offspring-parameter MH, DMH over the parent
/// parameters, then a sweep of birth-death updates of the latent parents.
/// Deterministic given the seed.
ChainOutput run_chain(const PointPattern& offspring, const PriorSpec& priors,
                      const ProposalSpec& proposal, const RunOptions& options);

/// Independent chains with generators derived from (seed, chain index),
/// run on up to max_threads threads (0 = hardware concurrency).
std::vector<ChainOutput> run_chains(const PointPattern& offspring, const PriorSpec& priors,
                                    const ProposalSpec& proposal, const RunOptions& options,
                                    std::size_t n_chains, std::size_t max_threads = 0);

}  // namespace nscp
