#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvoreg {

/// Closed search interval for one coefficient.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double width() const noexcept { return upper - lower; }
  bool contains(double v) const noexcept { return v >= lower && v <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Bounds = std::vector<Interval>;

/// Value returned by RegressionModel::evaluate when the formula leaves the
/// finite doubles (exp overflow, zero denominator, ...).
inline constexpr double kNonFiniteSentinel = std::numeric_limits<double>::quiet_NaN();

/// A named closed-form model y ~ f(x, beta).
///
/// Instances are immutable once built by the registry and can be shared
/// across threads without synchronisation.
class RegressionModel {
 public:
  using Formula = double (*)(std::span<const double> beta, std::span<const double> x);

  RegressionModel(std::string name, std::size_t arity, std::size_t num_coefficients,
                  Bounds bounds, Formula formula);

  const std::string& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t num_coefficients() const noexcept { return num_coefficients_; }
  const Bounds& bounds() const noexcept { return bounds_; }

  /// f(x, beta). Coefficients outside the bounds are evaluated as given.
  /// Returns kNonFiniteSentinel instead of inf/nan. Throws std::invalid_argument
  /// on a length mismatch.
  double evaluate(std::span<const double> beta, std::span<const double> x) const;

  /// Copy of this model with a different search box.
  RegressionModel with_bounds(Bounds bounds) const;

 private:
  std::string name_;
  std::size_t arity_;
  std::size_t num_coefficients_;
  Bounds bounds_;
  Formula formula_;
};

/// The ten benchmark models, keyed by lower-case name.
class ModelRegistry {
 public:
  /// Registry with the compiled-in default search boxes.
  ModelRegistry();

  /// Defaults overridden by the entries of a JSON bounds file
  /// (`{"misra1a": [[lb, ub], [lb, ub]], ...}`). Models absent from the
  /// file keep their defaults.
  static ModelRegistry from_bounds_file(const std::filesystem::path& path);

  /// Case-insensitive lookup. Throws LookupError listing valid names.
  const RegressionModel& get(std::string_view name) const;

  bool contains(std::string_view name) const noexcept;

  /// Registered names in benchmark table order.
  std::vector<std::string> names() const;

  const std::vector<RegressionModel>& models() const noexcept { return models_; }

  void override_bounds(std::string_view name, Bounds bounds);

 private:
  std::vector<RegressionModel> models_;
};

/// Default bounds as a JSON document in the bounds-file schema.
std::string default_bounds_json();

}  // namespace mvoreg
