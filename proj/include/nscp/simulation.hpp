#pragma once

#include <cstdint>

#include "nscp/samplers.hpp"

namespace nscp {

/// Approximate draw of a parent configuration from the interaction density:
/// terminal state of a long birth-death chain started from the empty
/// configuration.
PointPattern simulate_parents(const ModelParams& params, const Window& window,
                              std::size_t steps, Rng& rng,
                              const ProposalSpec& proposal = {});

/// Poisson(alpha) offsprings per parent, Gaussian(omega) displacements,
/// thinned to the window.
PointPattern simulate_offsprings(const PointPattern& parents, double alpha, double omega,
                                 const Window& window, Rng& rng);

struct Scenario {
  int id;
  ModelParams truth;
  PointPattern parents;
  PointPattern offspring;
};

/// Scenario generator for the three simulated outbreak intensities
/// (severe / moderate / mild). Truth values per scenario:
///   1: alpha=6, omega=360, kappa=1.2e-7, theta1=1.5, theta2=600
///   2: alpha=5, omega=400, kappa=1.0e-7, theta1=1.5, theta2=650
///   3: alpha=4, omega=440, kappa=0.5e-7, theta1=1.5, theta2=700
Scenario make_scenario(int id, const Window& window, std::uint64_t seed,
                       std::size_t parent_steps = 500000,
                       const ProposalSpec& proposal = {});

/// Default scenario window: a square with the area used to anchor the
/// window-scale priors (24600 m on a side).
Window default_scenario_window();

ModelParams scenario_truth(int id);

}  // namespace nscp
