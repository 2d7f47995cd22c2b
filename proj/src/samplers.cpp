#include "nscp/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nscp {

namespace {

constexpr double kPosInf = std::numeric_limits<double>::infinity();
// exp(-x) below this is indistinguishable from zero next to any covered term
constexpr double kKernelLogCutoff = 700.0;

double capped(double s) { return std::min(s, kLocalEnergyCap); }

double accept_probability(double log_ratio) {
  if (std::isnan(log_ratio)) return 0.0;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

}  // namespace

ProposalSpec ProposalSpec::defaults_for(const PriorSpec& priors) {
  ProposalSpec spec;
  spec.steps.alpha = 0.05 * priors.alpha.width();
  spec.steps.omega = 0.05 * priors.omega.width();
  spec.steps.kappa = 0.05 * priors.kappa.width();
  spec.steps.theta1 = 0.05 * priors.theta1.width();
  spec.steps.theta2 = 0.05 * priors.theta2.width();
  return spec;
}

void ProposalSpec::validate() const {
  if (steps.alpha < 0 || steps.omega < 0 || steps.kappa < 0 || steps.theta1 < 0 ||
      steps.theta2 < 0)
    throw std::invalid_argument("ProposalSpec: step sizes must be >= 0");
  if (birth_prob < 0 || death_prob < 0 || birth_prob + death_prob > 1.0 + 1e-12)
    throw std::invalid_argument("ProposalSpec: birth/death/move mix must sum to 1");
  if (aux_min_steps == 0)
    throw std::invalid_argument("ProposalSpec: aux_min_steps must be >= 1");
  if (!(aux_steps_per_parent >= 0))
    throw std::invalid_argument("ProposalSpec: aux_steps_per_parent must be >= 0");
}

double reflect_into(double x, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("reflect_into: empty interval");
  if (x >= lo && x <= hi) return x;
  const double w = hi - lo;
  double t = std::fmod(x - lo, 2.0 * w);
  if (t < 0.0) t += 2.0 * w;
  return lo + (t <= w ? t : 2.0 * w - t);
}

BirthDeathSampler::BirthDeathSampler(const Window& window, const ModelParams& params,
                                     std::vector<Point> initial, const ProposalSpec& proposal)
    : window_(window),
      params_(params),
      proposal_(proposal),
      posterior_(false),
      area_(window.area()),
      log_area_(std::log(window.area())),
      points_(std::move(initial)) {
  proposal_.validate();
  rebuild_interaction();
}

BirthDeathSampler::BirthDeathSampler(const Window& window, const ModelParams& params,
                                     std::vector<Point> initial, const ProposalSpec& proposal,
                                     std::vector<Point> offspring)
    : window_(window),
      params_(params),
      proposal_(proposal),
      posterior_(true),
      area_(window.area()),
      log_area_(std::log(window.area())),
      points_(std::move(initial)),
      offspring_(std::move(offspring)) {
  proposal_.validate();
  rebuild_interaction();
  rebuild_kernel();
}

void BirthDeathSampler::rebuild_interaction() {
  const std::size_t m = points_.size();
  local_.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double lp =
          log_phi(std::sqrt(squared_distance(points_[i], points_[j])), params_);
      if (lp == kNegInf)
        throw std::invalid_argument("BirthDeathSampler: coincident parents in configuration");
      local_[i] += lp;
      local_[j] += lp;
    }
  }
}

double BirthDeathSampler::kernel(const Point& x, const Point& c) const {
  const double w2 = params_.omega * params_.omega;
  const double e = squared_distance(x, c) / (2.0 * w2);
  if (e > kKernelLogCutoff) return 0.0;
  return std::exp(-e) / (2.0 * M_PI * w2);
}

void BirthDeathSampler::rebuild_kernel() {
  const std::size_t m = points_.size();
  const std::size_t n = offspring_.size();
  parent_mass_.assign(m, 0.0);
  mass_sum_ = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    parent_mass_[i] = window_.gaussian_mass(points_[i], params_.omega);
    mass_sum_ += parent_mass_[i];
  }
  kernel_sum_.assign(n, 0.0);
  uncovered_ = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += kernel(offspring_[j], points_[i]);
    kernel_sum_[j] = acc;
    if (acc <= 0.0) ++uncovered_;
  }
}

void BirthDeathSampler::set_parent_params(const ModelParams& params) {
  const bool omega_changed = params.omega != params_.omega;
  params_ = params;
  rebuild_interaction();
  if (posterior_ && omega_changed) rebuild_kernel();
}

void BirthDeathSampler::set_offspring_params(double alpha, double omega) {
  const bool omega_changed = omega != params_.omega;
  params_ = params_.with_offspring_params(alpha, omega);
  if (posterior_ && omega_changed) rebuild_kernel();
}

double BirthDeathSampler::cached_log_f() const {
  if (!posterior_)
    throw std::logic_error("BirthDeathSampler: no offspring likelihood in prior mode");
  if (uncovered_ > 0) return kNegInf;
  double total = area_ - params_.alpha * mass_sum_;
  const double log_alpha = std::log(params_.alpha);
  for (double ks : kernel_sum_) total += log_alpha + std::log(ks);
  return total;
}

double BirthDeathSampler::birth_log_ratio(const Point& xi) {
  const std::size_t m = points_.size();
  add_contrib_.resize(m);
  s_new_ = 0.0;
  double delta = std::log(params_.kappa);
  for (std::size_t i = 0; i < m; ++i) {
    const double lp = log_phi(std::sqrt(squared_distance(points_[i], xi)), params_);
    if (lp == kNegInf) return kNegInf;
    add_contrib_[i] = lp;
    s_new_ += lp;
    delta += capped(local_[i] + lp) - capped(local_[i]);
  }
  delta += capped(s_new_);
  double lr = delta + log_area_ - std::log(static_cast<double>(m + 1));

  if (posterior_) {
    mass_scratch_ = window_.gaussian_mass(xi, params_.omega);
    double df = -params_.alpha * mass_scratch_;
    const std::size_t n = offspring_.size();
    k_add_.resize(n);
    std::size_t still_uncovered = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double k = kernel(offspring_[j], xi);
      k_add_[j] = k;
      const double old = kernel_sum_[j];
      if (old + k <= 0.0)
        ++still_uncovered;
      else if (old > 0.0)
        df += std::log1p(k / old);
    }
    if (still_uncovered > 0) return kNegInf;
    if (uncovered_ > 0) return kPosInf;  // leaving a zero-density state
    lr += df;
  }
  return lr;
}

double BirthDeathSampler::death_log_ratio(std::size_t idx) {
  const std::size_t m = points_.size();  // pre-removal count
  double count_term;
  if (proposal_.convention == BdConvention::Paper) {
    if (m < 2) return kNegInf;  // printed (m-1) factor vanishes
    count_term = std::log(static_cast<double>(m - 1));
  } else {
    count_term = std::log(static_cast<double>(m));
  }

  del_contrib_.resize(m);
  double delta = -std::log(params_.kappa) - capped(local_[idx]);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == idx) continue;
    const double lp =
        log_phi(std::sqrt(squared_distance(points_[i], points_[idx])), params_);
    del_contrib_[i] = lp;
    delta += capped(local_[i] - lp) - capped(local_[i]);
  }
  double lr = delta + count_term - log_area_;

  if (posterior_) {
    double df = params_.alpha * parent_mass_[idx];
    const std::size_t n = offspring_.size();
    k_new_.resize(n);
    std::size_t still_uncovered = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double k = kernel(offspring_[j], points_[idx]);
      double neu = kernel_sum_[j] - k;
      if (neu < 1e-9 * kernel_sum_[j]) {
        neu = 0.0;  // catastrophic cancellation: recompute
        for (std::size_t i = 0; i < m; ++i)
          if (i != idx) neu += kernel(offspring_[j], points_[i]);
      }
      k_new_[j] = neu;
      if (neu <= 0.0)
        ++still_uncovered;
      else if (kernel_sum_[j] > 0.0)
        df += std::log(neu / kernel_sum_[j]);
    }
    if (still_uncovered > 0) return kNegInf;
    if (uncovered_ > 0) return kPosInf;
    lr += df;
  }
  return lr;
}

double BirthDeathSampler::move_log_ratio(std::size_t idx, const Point& xi) {
  const std::size_t m = points_.size();
  add_contrib_.resize(m);
  del_contrib_.resize(m);
  s_new_ = 0.0;
  double delta = -capped(local_[idx]);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == idx) continue;
    const double del =
        log_phi(std::sqrt(squared_distance(points_[i], points_[idx])), params_);
    const double add = log_phi(std::sqrt(squared_distance(points_[i], xi)), params_);
    if (add == kNegInf) return kNegInf;
    del_contrib_[i] = del;
    add_contrib_[i] = add;
    s_new_ += add;
    delta += capped(local_[i] - del + add) - capped(local_[i]);
  }
  delta += capped(s_new_);
  double lr = delta;

  if (posterior_) {
    mass_scratch_ = window_.gaussian_mass(xi, params_.omega);
    double df = params_.alpha * (parent_mass_[idx] - mass_scratch_);
    const std::size_t n = offspring_.size();
    k_add_.resize(n);
    k_new_.resize(n);
    std::size_t still_uncovered = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double k_del = kernel(offspring_[j], points_[idx]);
      const double k_add = kernel(offspring_[j], xi);
      double neu = kernel_sum_[j] - k_del + k_add;
      if (neu < 1e-9 * std::max(kernel_sum_[j], k_add)) {
        neu = k_add;
        for (std::size_t i = 0; i < m; ++i)
          if (i != idx) neu += kernel(offspring_[j], points_[i]);
      }
      k_add_[j] = k_add;
      k_new_[j] = neu;
      if (neu <= 0.0)
        ++still_uncovered;
      else if (kernel_sum_[j] > 0.0)
        df += std::log(neu / kernel_sum_[j]);
    }
    if (still_uncovered > 0) return kNegInf;
    if (uncovered_ > 0) return kPosInf;
    lr += df;
  }
  return lr;
}

void BirthDeathSampler::apply_birth(const Point& xi) {
  const std::size_t m = points_.size();
  for (std::size_t i = 0; i < m; ++i) local_[i] += add_contrib_[i];
  local_.push_back(s_new_);
  points_.push_back(xi);
  if (posterior_) {
    for (std::size_t j = 0; j < offspring_.size(); ++j) {
      if (kernel_sum_[j] <= 0.0 && k_add_[j] > 0.0) --uncovered_;
      kernel_sum_[j] += k_add_[j];
    }
    parent_mass_.push_back(mass_scratch_);
    mass_sum_ += mass_scratch_;
  }
}

void BirthDeathSampler::apply_death(std::size_t idx) {
  const std::size_t m = points_.size();
  for (std::size_t i = 0; i < m; ++i)
    if (i != idx) local_[i] -= del_contrib_[i];
  points_[idx] = points_.back();
  points_.pop_back();
  local_[idx] = local_.back();
  local_.pop_back();
  if (posterior_) {
    for (std::size_t j = 0; j < offspring_.size(); ++j) {
      if (kernel_sum_[j] > 0.0 && k_new_[j] <= 0.0) ++uncovered_;
      kernel_sum_[j] = k_new_[j];
    }
    mass_sum_ -= parent_mass_[idx];
    parent_mass_[idx] = parent_mass_.back();
    parent_mass_.pop_back();
  }
}

void BirthDeathSampler::apply_move(std::size_t idx, const Point& xi) {
  const std::size_t m = points_.size();
  for (std::size_t i = 0; i < m; ++i)
    if (i != idx) local_[i] += add_contrib_[i] - del_contrib_[i];
  local_[idx] = s_new_;
  points_[idx] = xi;
  if (posterior_) {
    for (std::size_t j = 0; j < offspring_.size(); ++j) {
      const double old = kernel_sum_[j];
      if (old <= 0.0 && k_new_[j] > 0.0) --uncovered_;
      if (old > 0.0 && k_new_[j] <= 0.0) ++uncovered_;
      kernel_sum_[j] = k_new_[j];
    }
    mass_sum_ += mass_scratch_ - parent_mass_[idx];
    parent_mass_[idx] = mass_scratch_;
  }
}

BdOutcome BirthDeathSampler::step(Rng& rng) {
  const double u = rng.uniform();
  if (u < proposal_.birth_prob) {
    ++counts_.birth_proposed;
    const Point xi = window_.sample_uniform(rng);
    const double lr = birth_log_ratio(xi);
    const bool accepted = std::log(rng.uniform()) < lr;
    if (accepted) {
      apply_birth(xi);
      ++counts_.birth_accepted;
    }
    return {BdKind::Birth, accepted, lr};
  }
  if (u < proposal_.birth_prob + proposal_.death_prob) {
    ++counts_.death_proposed;
    if (points_.empty()) return {BdKind::Death, false, kNegInf};
    const std::size_t idx = rng.uniform_index(points_.size());
    const double lr = death_log_ratio(idx);
    const bool accepted = std::log(rng.uniform()) < lr;
    if (accepted) {
      apply_death(idx);
      ++counts_.death_accepted;
    }
    return {BdKind::Death, accepted, lr};
  }
  ++counts_.move_proposed;
  if (points_.empty()) return {BdKind::Move, false, kNegInf};
  const std::size_t idx = rng.uniform_index(points_.size());
  const Point xi = window_.sample_uniform(rng);
  const double lr = move_log_ratio(idx, xi);
  const bool accepted = std::log(rng.uniform()) < lr;
  if (accepted) {
    apply_move(idx, xi);
    ++counts_.move_accepted;
  }
  return {BdKind::Move, accepted, lr};
}

BdStepResult bd_step_parent_prior(const PointPattern& parents, const ModelParams& params,
                                  Rng& rng, const ProposalSpec& proposal) {
  BirthDeathSampler sampler(parents.window(), params, parents.points(), proposal);
  const BdOutcome outcome = sampler.step(rng);
  return {PointPattern(sampler.points(), parents.window()), outcome};
}

BdStepResult bd_step_parent_posterior(const PointPattern& parents, const PointPattern& offspring,
                                      const ModelParams& params, Rng& rng,
                                      const ProposalSpec& proposal) {
  if (!(parents.window() == offspring.window()))
    throw std::invalid_argument("bd_step_parent_posterior: X and C must share one window");
  BirthDeathSampler sampler(parents.window(), params, parents.points(), proposal,
                            offspring.points());
  const BdOutcome outcome = sampler.step(rng);
  return {PointPattern(sampler.points(), parents.window()), outcome};
}

MhResult mh_update_offspring_params(const PointPattern& offspring, const PointPattern& parents,
                                    const ModelParams& current, const PriorSpec& priors,
                                    const ParamSteps& steps, Rng& rng) {
  const double alpha_new = reflect_into(current.alpha + rng.normal(0.0, steps.alpha),
                                        priors.alpha.lo, priors.alpha.hi);
  const double omega_new = reflect_into(current.omega + rng.normal(0.0, steps.omega),
                                        priors.omega.lo, priors.omega.hi);
  const ModelParams proposed = current.with_offspring_params(alpha_new, omega_new);
  const double lf_new = log_f_offspring(offspring, parents, alpha_new, omega_new);
  const double lf_cur = log_f_offspring(offspring, parents, current.alpha, current.omega);
  double lr;
  if (lf_new == kNegInf)
    lr = kNegInf;
  else if (lf_cur == kNegInf)
    lr = kPosInf;
  else
    lr = lf_new - lf_cur;
  const bool accepted = std::log(rng.uniform()) < lr;
  return {accepted ? proposed : current, accepted, lr};
}

double dmh_log_ratio(const PointPattern& parents, const PointPattern& aux,
                     const ModelParams& current, const ModelParams& proposed) {
  const double numerator = log_h_parent(parents, proposed) + log_h_parent(aux, current);
  const double denominator = log_h_parent(parents, current) + log_h_parent(aux, proposed);
  if (numerator == kNegInf) return kNegInf;
  if (denominator == kNegInf) return kPosInf;
  return numerator - denominator;
}

DmhResult dmh_update_parent_params(const PointPattern& parents, const ModelParams& current,
                                   const PriorSpec& priors, const ProposalSpec& proposal,
                                   Rng& rng) {
  const double kappa_new = reflect_into(current.kappa + rng.normal(0.0, proposal.steps.kappa),
                                        priors.kappa.lo, priors.kappa.hi);
  const double theta1_new = reflect_into(current.theta1 + rng.normal(0.0, proposal.steps.theta1),
                                         priors.theta1.lo, priors.theta1.hi);
  const double theta2_new = reflect_into(current.theta2 + rng.normal(0.0, proposal.steps.theta2),
                                         priors.theta2.lo, priors.theta2.hi);
  ModelParams proposed = current;
  try {
    proposed = current.with_parent_params(kappa_new, theta1_new, theta2_new);
  } catch (const std::exception&) {
    return {current, false, kNegInf, {}};  // pasting failure: auto-reject
  }

  // Auxiliary configuration from the model at the proposed parameters,
  // birth-death chain started at the current parents.
  BirthDeathSampler aux(parents.window(), proposed, parents.points(), proposal);
  const std::size_t inner = std::max<std::size_t>(
      proposal.aux_min_steps,
      static_cast<std::size_t>(
          std::llround(proposal.aux_steps_per_parent * static_cast<double>(parents.size()))));
  for (std::size_t s = 0; s < inner; ++s) aux.step(rng);
  PointPattern aux_pattern(aux.points(), parents.window());

  const double lr = dmh_log_ratio(parents, aux_pattern, current, proposed);
  const bool accepted = std::log(rng.uniform()) < lr;
  return {accepted ? proposed : current, accepted, lr, aux_pattern.points()};
}

void StepSizeTuner::update(double accept_prob) {
  const double gain = std::pow(static_cast<double>(++iterations_), -0.66);
  log_scale_ += gain * (accept_prob - target_);
  log_scale_ = std::clamp(log_scale_, -7.0, 7.0);
}

double StepSizeTuner::scale() const { return std::exp(log_scale_); }

namespace {

std::vector<Point> initial_parent_grid(const Window& window, std::size_t count, Rng& rng) {
  std::vector<Point> init;
  const std::size_t g =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const BoundingBox& bb = window.bounding_box();
  for (std::size_t gy = 0; gy < g && init.size() < count; ++gy) {
    for (std::size_t gx = 0; gx < g && init.size() < count; ++gx) {
      const Point p{bb.x_min + (gx + 0.5) * bb.width() / g,
                    bb.y_min + (gy + 0.5) * bb.height() / g};
      if (window.contains(p)) init.push_back(p);
    }
  }
  while (init.size() < count) init.push_back(window.sample_uniform(rng));
  return init;
}

std::string echo_config(const PriorSpec& pr, const ProposalSpec& pp, const RunOptions& opt) {
  std::ostringstream os;
  os.precision(17);
  os << "priors alpha=[" << pr.alpha.lo << "," << pr.alpha.hi << "] omega=[" << pr.omega.lo
     << "," << pr.omega.hi << "] kappa=[" << pr.kappa.lo << "," << pr.kappa.hi
     << "] theta1=[" << pr.theta1.lo << "," << pr.theta1.hi << "] theta2=[" << pr.theta2.lo
     << "," << pr.theta2.hi << "]; steps alpha=" << pp.steps.alpha
     << " omega=" << pp.steps.omega << " kappa=" << pp.steps.kappa
     << " theta1=" << pp.steps.theta1 << " theta2=" << pp.steps.theta2
     << "; aux_min=" << pp.aux_min_steps << " aux_per_parent=" << pp.aux_steps_per_parent
     << " convention=" << (pp.convention == BdConvention::Paper ? "paper" : "standard")
     << "; iterations=" << opt.iterations << " burn_in=" << opt.burn_in
     << " seed=" << opt.seed << " parent_sweeps=" << opt.parent_sweeps_per_iter
     << " adapt=" << (opt.adapt ? 1 : 0);
  return os.str();
}

}  // namespace

ChainOutput run_chain(const PointPattern& offspring, const PriorSpec& priors,
                      const ProposalSpec& proposal, const RunOptions& options) {
  priors.validate();
  proposal.validate();
  if (options.iterations <= options.burn_in)
    throw std::invalid_argument("run_chain: iterations must exceed burn_in");

  Rng rng(options.seed);
  const Window& window = offspring.window();

  ModelParams params = ModelParams::create(priors.alpha.midpoint(), priors.omega.midpoint(),
                                           priors.kappa.midpoint(), priors.theta1.midpoint(),
                                           priors.theta2.midpoint());
  const std::size_t m0 = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(static_cast<double>(offspring.size()) / priors.alpha.midpoint())));
  BirthDeathSampler parents(window, params, initial_parent_grid(window, m0, rng), proposal,
                            offspring.points());

  StepSizeTuner offspring_tuner;
  StepSizeTuner parent_tuner;
  std::uint64_t offspring_accepts = 0;
  std::uint64_t parent_accepts = 0;
  std::vector<ParamSample> samples;
  samples.reserve(options.iterations - options.burn_in);

  for (std::uint64_t t = 1; t <= options.iterations; ++t) {
    const bool adapting = options.adapt && t <= options.burn_in;
    PointPattern current_parents(parents.points(), window);

    // Part 1: offspring parameters (alpha, omega), cached current likelihood.
    {
      const double scale = offspring_tuner.scale();
      const double alpha_new =
          reflect_into(params.alpha + rng.normal(0.0, scale * proposal.steps.alpha),
                       priors.alpha.lo, priors.alpha.hi);
      const double omega_new =
          reflect_into(params.omega + rng.normal(0.0, scale * proposal.steps.omega),
                       priors.omega.lo, priors.omega.hi);
      const double lf_new =
          log_f_offspring(offspring, current_parents, alpha_new, omega_new);
      const double lf_cur = parents.cached_log_f();
      double lr;
      if (lf_new == kNegInf)
        lr = kNegInf;
      else if (lf_cur == kNegInf)
        lr = kPosInf;
      else
        lr = lf_new - lf_cur;
      if (std::log(rng.uniform()) < lr) {
        params = params.with_offspring_params(alpha_new, omega_new);
        parents.set_offspring_params(alpha_new, omega_new);
        ++offspring_accepts;
      }
      if (adapting) offspring_tuner.update(accept_probability(lr));
    }

    // Part 2: parent parameters (kappa, theta1, theta2) via DMH.
    {
      ProposalSpec scaled = proposal;
      const double scale = parent_tuner.scale();
      scaled.steps.kappa *= scale;
      scaled.steps.theta1 *= scale;
      scaled.steps.theta2 *= scale;
      const DmhResult result =
          dmh_update_parent_params(current_parents, params, priors, scaled, rng);
      if (result.accepted) {
        params = result.params;
        parents.set_parent_params(params);
        ++parent_accepts;
      }
      if (adapting) parent_tuner.update(accept_probability(result.log_ratio));
    }

    // Part 3: latent parents by birth-death sweeps.
    const std::size_t sweeps = options.parent_sweeps_per_iter
                                   ? options.parent_sweeps_per_iter
                                   : std::max<std::size_t>(parents.size(), 20);
    for (std::size_t s = 0; s < sweeps; ++s) parents.step(rng);

    if (t > options.burn_in)
      samples.push_back({t, params.alpha, params.omega, params.kappa, params.theta1,
                         params.theta2, parents.size()});
  }

  const auto rate = [](std::uint64_t acc, std::uint64_t total) {
    return total == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(total);
  };
  const BdCounts& bd = parents.counts();
  AcceptanceRates rates{rate(offspring_accepts, options.iterations),
                        rate(parent_accepts, options.iterations),
                        rate(bd.birth_accepted, bd.birth_proposed),
                        rate(bd.death_accepted, bd.death_proposed),
                        rate(bd.move_accepted, bd.move_proposed)};
  return ChainOutput{std::move(samples), PointPattern(parents.points(), window), rates,
                     options.seed, echo_config(priors, proposal, options)};
}

std::vector<ChainOutput> run_chains(const PointPattern& offspring, const PriorSpec& priors,
                                    const ProposalSpec& proposal, const RunOptions& options,
                                    std::size_t n_chains, std::size_t max_threads) {
  if (n_chains == 0) return {};
  std::size_t workers = max_threads ? max_threads : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, n_chains));

  std::vector<ChainOutput> outputs;
  outputs.reserve(n_chains);
  std::vector<RunOptions> per_chain(n_chains, options);
  for (std::size_t c = 0; c < n_chains; ++c)
    per_chain[c].seed = n_chains == 1 ? options.seed : Rng::derive_seed(options.seed, c);

  // Collected through exception-or-result slots so one failure surfaces.
  std::vector<std::exception_ptr> errors(n_chains);
  std::vector<std::unique_ptr<ChainOutput>> slots(n_chains);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chains) return;
      try {
        slots[c] = std::make_unique<ChainOutput>(
            run_chain(offspring, priors, proposal, per_chain[c]));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (std::size_t c = 0; c < n_chains; ++c) {
    if (errors[c]) std::rethrow_exception(errors[c]);
    outputs.push_back(std::move(*slots[c]));
  }
  return outputs;
}

}  // namespace nscp
