#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvoreg/objective.hpp"
#include "mvoreg/optimizer.hpp"

namespace mvoreg::mvo {

/// Travelling distance rate: 1 - l^(1/p) / L^(1/p). Decreases from 1 to 0.
double travelling_distance_rate(std::size_t iteration, std::size_t max_iterations, double p);

/// Wormhole existence probability: linear from wep_min (l = 0) to wep_max (l = L).
double wormhole_existence_probability(std::size_t iteration, std::size_t max_iterations, double wep_min,
                                      double wep_max);

/// Index drawn with probability proportional to `weights`; uniform when all
/// weights are zero. Weights must be finite and non-negative.
std::size_t roulette_select(std::span<const double> weights, Rng& rng);

/// Normalized inflation rates for rates sorted best first: |r_i| / ||r||_2
/// over the finite rates. Non-finite rates get 1; an all-zero vector gives 0.
std::vector<double> normalized_inflation(std::span<const double> sorted_rates);

/// White-hole donor weights for minimisation: (max_rate - rate_i) + eps, so
/// lower inflation means a likelier donor. Non-finite rates get weight 0.
std::vector<double> donor_weights(std::span<const double> sorted_rates);

/// A population of universes. During the exchange and wormhole phases the
/// positions are sorted by inflation rate, best first.
struct UniverseState {
  Population positions;
  std::vector<double> inflation_rates;
  std::vector<double> best_universe;
  double best_inflation = kWorstFitness;
  std::size_t iteration = 0;
};

/// Evaluates every universe, updates the elitist best record and sorts the
/// universes by inflation rate (non-finite last, ties by index).
void evaluate_and_sort(UniverseState& state, const CostFunction& cost);

/// White/black hole exchange. For every universe except the best and every
/// coordinate, with probability NI(U_i) the coordinate is replaced by the
/// same coordinate of a roulette-selected donor (taken from the pre-phase
/// snapshot). Expects sorted state with current inflation rates.
void exchange_phase(UniverseState& state, Rng& rng);

/// One coordinate moved through a wormhole around `best`:
/// best +/- tdr * ((ub - lb) * r4 + lb), '+' when r3 < 0.5. Not clamped.
double wormhole_coordinate(double best, double tdr, const Interval& bounds, double r3, double r4);

/// Wormhole exploitation. For every universe except the best and every
/// coordinate, with probability `wep` the coordinate is replaced by
/// wormhole_coordinate(...) and clamped to bounds.
void wormhole_phase(UniverseState& state, double wep, double tdr, const Bounds& bounds, Rng& rng);

/// Runs the optimizer for config.max_iterations iterations. train_mse is the
/// final best objective value; test_mse is left unset.
RunResult minimize(const CostFunction& cost, const Bounds& bounds, const OptimizerConfig& config);
RunResult minimize(const Objective& objective, const OptimizerConfig& config);

}  // namespace mvoreg::mvo
