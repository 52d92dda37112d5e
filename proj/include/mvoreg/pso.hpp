#pragma once

#include <cstddef>
#include <vector>

#include "mvoreg/objective.hpp"
#include "mvoreg/optimizer.hpp"

namespace mvoreg::pso {

/// Linearly decreasing inertia: w_max at l = 0, w_min at l = L.
double inertia(std::size_t iteration, std::size_t max_iterations, double w_max, double w_min);

struct SwarmState {
  Population positions;
  Population velocities;
  Population personal_best_positions;
  std::vector<double> personal_best_values;
  std::vector<double> global_best_position;
  double global_best_value = kWorstFitness;
  std::size_t iteration = 0;
};

/// Swarm at `positions` with zero velocities and no evaluations yet.
SwarmState make_swarm(Population positions);

/// Evaluates all particles and updates personal and global bests (strict improvement).
void evaluate(SwarmState& swarm, const CostFunction& cost);

/// Velocity and position update with inertia `w`: velocities clamped to
/// +/-(ub - lb), positions clamped to bounds.
void move(SwarmState& swarm, double w, const PsoParams& params, const Bounds& bounds, Rng& rng);

/// Global-best PSO for config.max_iterations iterations; test_mse is left unset.
RunResult minimize(const CostFunction& cost, const Bounds& bounds, const OptimizerConfig& config);
RunResult minimize(const Objective& objective, const OptimizerConfig& config);

}  // namespace mvoreg::pso
