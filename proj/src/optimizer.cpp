#include "mvoreg/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "mvoreg/error.hpp"

namespace mvoreg {

void OptimizerConfig::validate() const {
  if (population_size < 2) throw ConfigError(fmt::format("population size must be >= 2, got {}", population_size));
  if (max_iterations < 1) throw ConfigError("iteration budget must be >= 1");
  if (!(mvo.wep_min < mvo.wep_max)) {
    throw ConfigError(fmt::format("need wep_min < wep_max, got {} and {}", mvo.wep_min, mvo.wep_max));
  }
  if (!(mvo.exploitation_accuracy > 0.0)) throw ConfigError("exploitation accuracy p must be positive");
  if (!(pso.c1 >= 0.0 && pso.c2 >= 0.0)) throw ConfigError("PSO acceleration coefficients must be non-negative");
}

std::string_view to_string(OptimizerKind kind) noexcept {
  return kind == OptimizerKind::mvo ? "mvo" : "pso";
}

OptimizerKind parse_optimizer(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "mvo") return OptimizerKind::mvo;
  if (key == "pso") return OptimizerKind::pso;
  throw ConfigError(fmt::format("unknown optimizer '{}'; expected mvo or pso", text));
}

void clamp_to_bounds(std::span<double> beta, const Bounds& bounds) {
  for (std::size_t j = 0; j < beta.size(); ++j) beta[j] = std::clamp(beta[j], bounds[j].lower, bounds[j].upper);
}

std::vector<double> clamped(std::span<const double> beta, const Bounds& bounds) {
  std::vector<double> out(beta.begin(), beta.end());
  clamp_to_bounds(out, bounds);
  return out;
}

Population init_population(std::size_t n, const Bounds& bounds, Rng& rng) {
  Population pop(n, std::vector<double>(bounds.size()));
  for (auto& individual : pop) {
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      individual[j] = rng.uniform(bounds[j].lower, bounds[j].upper);
    }
  }
  return pop;
}

}  // namespace mvoreg
