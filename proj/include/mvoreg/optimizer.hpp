#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "mvoreg/model_registry.hpp"
#include "mvoreg/rng.hpp"

namespace mvoreg {

struct MvoParams {
  double wep_min = 0.2;
  double wep_max = 1.0;
  /// Exponent p of the travelling-distance-rate schedule.
  double exploitation_accuracy = 6.0;
};

struct PsoParams {
  double w_max = 0.9;
  double w_min = 0.4;
  double c1 = 2.05;
  double c2 = 2.05;
};

struct OptimizerConfig {
  std::size_t population_size = 30;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
  MvoParams mvo;
  PsoParams pso;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

enum class OptimizerKind { mvo, pso };

std::string_view to_string(OptimizerKind kind) noexcept;
/// Throws ConfigError on anything but "mvo" / "pso" (case-insensitive).
OptimizerKind parse_optimizer(std::string_view text);

struct RunResult {
  std::vector<double> best_beta;
  double train_mse = std::numeric_limits<double>::quiet_NaN();
  double test_mse = std::numeric_limits<double>::quiet_NaN();
  /// Best-so-far objective after each iteration; non-increasing.
  std::vector<double> trace;
  std::uint64_t seed = 0;
};

using Population = std::vector<std::vector<double>>;

/// Projects each coordinate onto its interval.
void clamp_to_bounds(std::span<double> beta, const Bounds& bounds);
std::vector<double> clamped(std::span<const double> beta, const Bounds& bounds);

/// n points, each coordinate uniform on [lb_j, ub_j].
Population init_population(std::size_t n, const Bounds& bounds, Rng& rng);

/// Maps NaN / -inf / +inf values to +inf so that fitness has a total order.
inline double sanitize_fitness(double v) noexcept {
  return (v == v && v != -std::numeric_limits<double>::infinity()) ? v
                                                                    : std::numeric_limits<double>::infinity();
}

}  // namespace mvoreg
