#include "mvoreg/mvo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mvoreg::mvo {

double travelling_distance_rate(std::size_t iteration, std::size_t max_iterations, double p) {
  const double l = static_cast<double>(iteration);
  const double big_l = static_cast<double>(max_iterations);
  return 1.0 - std::pow(l, 1.0 / p) / std::pow(big_l, 1.0 / p);
}

double wormhole_existence_probability(std::size_t iteration, std::size_t max_iterations, double wep_min,
                                      double wep_max) {
  return wep_min + static_cast<double>(iteration) * ((wep_max - wep_min) / static_cast<double>(max_iterations));
}

std::size_t roulette_select(std::span<const double> weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) return rng.index(weights.size());
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  // Rounding in the cumulative sum can leave target just above it.
  return last_positive;
}

std::vector<double> normalized_inflation(std::span<const double> sorted_rates) {
  double sum_sq = 0.0;
  double scale = 0.0;
  for (double r : sorted_rates) {
    if (std::isfinite(r)) scale = std::max(scale, std::abs(r));
  }
  std::vector<double> out(sorted_rates.size(), 0.0);
  if (scale > 0.0) {
    // Scaled to stay clear of overflow for large MSE values.
    for (double r : sorted_rates) {
      if (std::isfinite(r)) sum_sq += (r / scale) * (r / scale);
    }
  }
  const double norm = scale * std::sqrt(sum_sq);
  for (std::size_t i = 0; i < sorted_rates.size(); ++i) {
    const double r = sorted_rates[i];
    if (!std::isfinite(r)) {
      out[i] = 1.0;
    } else if (norm > 0.0) {
      out[i] = std::abs(r) / norm;
    }
  }
  return out;
}

std::vector<double> donor_weights(std::span<const double> sorted_rates) {
  double max_rate = -std::numeric_limits<double>::infinity();
  for (double r : sorted_rates) {
    if (std::isfinite(r)) max_rate = std::max(max_rate, r);
  }
  std::vector<double> out(sorted_rates.size(), 0.0);
  for (std::size_t i = 0; i < sorted_rates.size(); ++i) {
    const double r = sorted_rates[i];
    if (std::isfinite(r)) out[i] = (max_rate - r) + std::numeric_limits<double>::epsilon();
  }
  return out;
}

void evaluate_and_sort(UniverseState& state, const CostFunction& cost) {
  const std::size_t n = state.positions.size();
  state.inflation_rates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = sanitize_fitness(cost(state.positions[i]));
    state.inflation_rates[i] = v;
    if (v < state.best_inflation || state.best_universe.empty()) {
      state.best_inflation = v;
      state.best_universe = state.positions[i];
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // +inf compares greater than every finite value; stable keeps ties by index.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state.inflation_rates[a] < state.inflation_rates[b];
  });

  Population sorted_positions;
  std::vector<double> sorted_rates;
  sorted_positions.reserve(n);
  sorted_rates.reserve(n);
  for (std::size_t idx : order) {
    sorted_positions.push_back(std::move(state.positions[idx]));
    sorted_rates.push_back(state.inflation_rates[idx]);
  }
  state.positions = std::move(sorted_positions);
  state.inflation_rates = std::move(sorted_rates);
}

void exchange_phase(UniverseState& state, Rng& rng) {
  const std::size_t n = state.positions.size();
  if (n < 2) return;
  const auto ni = normalized_inflation(state.inflation_rates);
  const auto weights = donor_weights(state.inflation_rates);
  const Population donors = state.positions;

  for (std::size_t i = 1; i < n; ++i) {
    auto& universe = state.positions[i];
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if (rng.uniform() < ni[i]) {
        const std::size_t white_hole = roulette_select(weights, rng);
        universe[j] = donors[white_hole][j];
      }
    }
  }
}

double wormhole_coordinate(double best, double tdr, const Interval& bounds, double r3, double r4) {
  const double step = tdr * (bounds.width() * r4 + bounds.lower);
  return r3 < 0.5 ? best + step : best - step;
}

void wormhole_phase(UniverseState& state, double wep, double tdr, const Bounds& bounds, Rng& rng) {
  const std::size_t n = state.positions.size();
  for (std::size_t i = 1; i < n; ++i) {
    auto& universe = state.positions[i];
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if (rng.uniform() < wep) {
        const double r3 = rng.uniform();
        const double r4 = rng.uniform();
        universe[j] = std::clamp(wormhole_coordinate(state.best_universe[j], tdr, bounds[j], r3, r4),
                                 bounds[j].lower, bounds[j].upper);
      }
    }
  }
}

RunResult minimize(const CostFunction& cost, const Bounds& bounds, const OptimizerConfig& config) {
  config.validate();
  const std::size_t big_l = config.max_iterations;
  const MvoParams& params = config.mvo;

  Rng rng(config.seed);
  UniverseState state;
  state.positions = init_population(config.population_size, bounds, rng);

  RunResult result;
  result.seed = config.seed;
  result.trace.reserve(big_l);

  for (std::size_t l = 1; l <= big_l; ++l) {
    state.iteration = l;
    evaluate_and_sort(state, cost);
    result.trace.push_back(state.best_inflation);

    const double wep = wormhole_existence_probability(l, big_l, params.wep_min, params.wep_max);
    const double tdr = travelling_distance_rate(l, big_l, params.exploitation_accuracy);
    exchange_phase(state, rng);
    wormhole_phase(state, wep, tdr, bounds, rng);
  }

  result.best_beta = state.best_universe;
  result.train_mse = state.best_inflation;
  return result;
}

RunResult minimize(const Objective& objective, const OptimizerConfig& config) {
  return minimize([&objective](std::span<const double> beta) { return objective.mse(beta); }, objective.bounds(),
                  config);
}

}  // namespace mvoreg::mvo
