#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include "mvoreg/dataset.hpp"
#include "mvoreg/model_registry.hpp"

namespace mvoreg {

/// Fitness assigned to coefficient vectors whose predictions are non-finite.
inline constexpr double kWorstFitness = std::numeric_limits<double>::infinity();

/// Any minimisable function of a coefficient vector.
using CostFunction = std::function<double(std::span<const double>)>;

/// Mean squared error of a model over a fixed set of rows.
///
/// Holds a reference to the model (owned by the registry) and its own copy
/// of the rows; immutable after construction.
class Objective {
 public:
  Objective(const RegressionModel& model, Dataset rows);

  /// (1/N) * sum (y_i - f(x_i, beta))^2, summed in row order. Returns
  /// kWorstFitness when any prediction is non-finite.
  double mse(std::span<const double> beta) const;
  double operator()(std::span<const double> beta) const { return mse(beta); }

  std::size_t dimension() const noexcept { return model_->num_coefficients(); }
  const Bounds& bounds() const noexcept { return model_->bounds(); }
  const RegressionModel& model() const noexcept { return *model_; }
  const Dataset& rows() const noexcept { return rows_; }

 private:
  const RegressionModel* model_;
  Dataset rows_;
};

}  // namespace mvoreg
