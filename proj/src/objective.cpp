#include "mvoreg/objective.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace mvoreg {

Objective::Objective(const RegressionModel& model, Dataset rows) : model_(&model), rows_(std::move(rows)) {
  if (rows_.arity() != model.arity()) {
    throw std::invalid_argument(fmt::format("model '{}' takes {} predictor(s) but the data has {}",
                                            model.name(), model.arity(), rows_.arity()));
  }
}

double Objective::mse(std::span<const double> beta) const {
  const std::size_t n = rows_.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = model_->evaluate(beta, rows_.row(i));
    if (!std::isfinite(pred)) return kWorstFitness;
    const double r = rows_.response(i) - pred;
    sum += r * r;
  }
  const double value = sum / static_cast<double>(n);
  return std::isfinite(value) ? value : kWorstFitness;
}

}  // namespace mvoreg
