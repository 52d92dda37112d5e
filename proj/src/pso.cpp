#include "mvoreg/pso.hpp"

#include <algorithm>

namespace mvoreg::pso {

double inertia(std::size_t iteration, std::size_t max_iterations, double w_max, double w_min) {
  return w_max - static_cast<double>(iteration) * ((w_max - w_min) / static_cast<double>(max_iterations));
}

SwarmState make_swarm(Population positions) {
  SwarmState swarm;
  const std::size_t n = positions.size();
  const std::size_t d = n > 0 ? positions.front().size() : 0;
  swarm.velocities.assign(n, std::vector<double>(d, 0.0));
  swarm.personal_best_positions = positions;
  swarm.personal_best_values.assign(n, kWorstFitness);
  swarm.positions = std::move(positions);
  return swarm;
}

void evaluate(SwarmState& swarm, const CostFunction& cost) {
  for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
    const double v = sanitize_fitness(cost(swarm.positions[i]));
    if (v < swarm.personal_best_values[i]) {
      swarm.personal_best_values[i] = v;
      swarm.personal_best_positions[i] = swarm.positions[i];
    }
    if (v < swarm.global_best_value || swarm.global_best_position.empty()) {
      swarm.global_best_value = v;
      swarm.global_best_position = swarm.positions[i];
    }
  }
}

void move(SwarmState& swarm, double w, const PsoParams& params, const Bounds& bounds, Rng& rng) {
  for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
    auto& x = swarm.positions[i];
    auto& v = swarm.velocities[i];
    const auto& pbest = swarm.personal_best_positions[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double vmax = bounds[j].width();
      v[j] = w * v[j] + params.c1 * r1 * (pbest[j] - x[j]) + params.c2 * r2 * (swarm.global_best_position[j] - x[j]);
      v[j] = std::clamp(v[j], -vmax, vmax);
      x[j] = std::clamp(x[j] + v[j], bounds[j].lower, bounds[j].upper);
    }
  }
}

RunResult minimize(const CostFunction& cost, const Bounds& bounds, const OptimizerConfig& config) {
  config.validate();
  const std::size_t big_l = config.max_iterations;

  Rng rng(config.seed);
  SwarmState swarm = make_swarm(init_population(config.population_size, bounds, rng));

  RunResult result;
  result.seed = config.seed;
  result.trace.reserve(big_l);

  for (std::size_t l = 1; l <= big_l; ++l) {
    swarm.iteration = l;
    evaluate(swarm, cost);
    result.trace.push_back(swarm.global_best_value);
    move(swarm, inertia(l, big_l, config.pso.w_max, config.pso.w_min), config.pso, bounds, rng);
  }

  result.best_beta = swarm.global_best_position;
  result.train_mse = swarm.global_best_value;
  return result;
}

RunResult minimize(const Objective& objective, const OptimizerConfig& config) {
  return minimize([&objective](std::span<const double> beta) { return objective.mse(beta); }, objective.bounds(),
                  config);
}

}  // namespace mvoreg::pso
