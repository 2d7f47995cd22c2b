#include "nscp/simulation.hpp"

#include <stdexcept>

namespace nscp {

PointPattern simulate_parents(const ModelParams& params, const Window& window,
                              std::size_t steps, Rng& rng, const ProposalSpec& proposal) {
  BirthDeathSampler sampler(window, params, {}, proposal);
  for (std::size_t s = 0; s < steps; ++s) sampler.step(rng);
  return PointPattern(sampler.points(), window);
}

PointPattern simulate_offsprings(const PointPattern& parents, double alpha, double omega,
                                 const Window& window, Rng& rng) {
  if (!(alpha >= 0.0) || !(omega > 0.0))
    throw std::invalid_argument("simulate_offsprings: need alpha >= 0, omega > 0");
  std::vector<Point> kept;
  for (const Point& c : parents.points()) {
    const int count = rng.poisson(alpha);
    for (int k = 0; k < count; ++k) {
      const Point x{c.x + rng.normal(0.0, omega), c.y + rng.normal(0.0, omega)};
      if (window.contains(x)) kept.push_back(x);
    }
  }
  return PointPattern(std::move(kept), window);
}

Window default_scenario_window() { return Window::rectangle(0.0, 24600.0, 0.0, 24600.0); }

ModelParams scenario_truth(int id) {
  switch (id) {
    case 1:
      return ModelParams::create(6.0, 360.0, 1.2e-7, 1.5, 600.0);
    case 2:
      return ModelParams::create(5.0, 400.0, 1.0e-7, 1.5, 650.0);
    case 3:
      return ModelParams::create(4.0, 440.0, 0.5e-7, 1.5, 700.0);
    default:
      throw std::invalid_argument("scenario_truth: id must be 1, 2 or 3");
  }
}

Scenario make_scenario(int id, const Window& window, std::uint64_t seed,
                       std::size_t parent_steps, const ProposalSpec& proposal) {
  const ModelParams truth = scenario_truth(id);
  Rng rng(seed);
  PointPattern parents = simulate_parents(truth, window, parent_steps, rng, proposal);
  PointPattern offspring =
      simulate_offsprings(parents, truth.alpha, truth.omega, window, rng);
  return Scenario{id, truth, std::move(parents), std::move(offspring)};
}

}  // namespace nscp
