#include "mvoreg/model_registry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "mvoreg/error.hpp"

namespace mvoreg {
namespace {

using std::exp;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double misra1a(std::span<const double> b, std::span<const double> x) {
  return b[0] * (1.0 - exp(-b[1] * x[0]));
}

double gauss1(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  const double d1 = t - b[3];
  const double d2 = t - b[6];
  return b[0] * exp(-b[1] * t) + b[2] * exp(-(d1 * d1) / (b[4] * b[4])) +
         b[5] * exp(-(d2 * d2) / (b[7] * b[7]));
}

double danwood(std::span<const double> b, std::span<const double> x) {
  return b[0] * std::pow(x[0], b[1]);
}

// Response modelled directly (not log y).
double nelson(std::span<const double> b, std::span<const double> x) {
  return exp(b[0] - b[1] * x[0] * exp(-b[2] * x[1]));
}

double lanczos2(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  return b[0] * exp(-b[1] * t) + b[2] * exp(-b[3] * t) + b[4] * exp(-b[5] * t);
}

double roszman1(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  return b[0] - b[1] * t - std::atan(b[2] / (t - b[3])) / std::numbers::pi;
}

// A zero amplitude contributes exactly zero, even when its period is zero.
double harmonic(double cos_amp, double sin_amp, double angle) {
  double v = 0.0;
  if (cos_amp != 0.0) v += cos_amp * std::cos(angle);
  if (sin_amp != 0.0) v += sin_amp * std::sin(angle);
  return v;
}

double enso(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  return b[0] + harmonic(b[1], b[2], kTwoPi * t / 12.0) +
         harmonic(b[4], b[5], kTwoPi * t / b[3]) + harmonic(b[7], b[8], kTwoPi * t / b[6]);
}

double mgh09(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  return b[0] * (t * t + t * b[1]) / (t * t + t * b[2] + b[3]);
}

double thurber(std::span<const double> b, std::span<const double> x) {
  const double t = x[0];
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (b[0] + b[1] * t + b[2] * t2 + b[3] * t3) / (1.0 + b[4] * t + b[5] * t2 + b[6] * t3);
}

double rat42(std::span<const double> b, std::span<const double> x) {
  return b[0] / (1.0 + exp(b[1] - b[2] * x[0]));
}

enum class Sign { positive, negative, free };

// Search box around a reference optimum: at least one decade either side,
// keeping the sign when the formula needs it.
Interval widen(double reference, Sign sign) {
  const double mag = std::abs(reference);
  switch (sign) {
    case Sign::positive:
      return {mag / 10.0, mag * 10.0};
    case Sign::negative:
      return {-mag * 10.0, -mag / 10.0};
    case Sign::free:
      break;
  }
  return {-mag * 10.0, mag * 10.0};
}

struct Coefficient {
  double reference;
  Sign sign;
};

Bounds box(std::initializer_list<Coefficient> coefficients) {
  Bounds out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) out.push_back(widen(c.reference, c.sign));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_bounds(std::string_view name, std::size_t m, const Bounds& bounds) {
  if (bounds.size() != m) {
    throw LookupError(fmt::format("bounds for '{}' must have {} intervals, got {}", name, m,
                                  bounds.size()));
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& iv = bounds[j];
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper) || !(iv.lower < iv.upper)) {
      throw LookupError(fmt::format("bounds for '{}' coefficient {}: need finite lb < ub, got [{}, {}]",
                                    name, j + 1, iv.lower, iv.upper));
    }
  }
}

}  // namespace

RegressionModel::RegressionModel(std::string name, std::size_t arity,
                                 std::size_t num_coefficients, Bounds bounds, Formula formula)
    : name_(std::move(name)),
      arity_(arity),
      num_coefficients_(num_coefficients),
      bounds_(std::move(bounds)),
      formula_(formula) {
  check_bounds(name_, num_coefficients_, bounds_);
}

double RegressionModel::evaluate(std::span<const double> beta, std::span<const double> x) const {
  if (beta.size() != num_coefficients_ || x.size() != arity_) {
    throw std::invalid_argument(fmt::format("{}: expected {} coefficients and {} predictors, got {} and {}",
                                            name_, num_coefficients_, arity_, beta.size(), x.size()));
  }
  const double v = formula_(beta, x);
  return std::isfinite(v) ? v : kNonFiniteSentinel;
}

RegressionModel RegressionModel::with_bounds(Bounds bounds) const {
  return RegressionModel(name_, arity_, num_coefficients_, std::move(bounds), formula_);
}

ModelRegistry::ModelRegistry() {
  using S = Sign;
  // Reference optima are the certified NIST StRD estimates for each dataset.
  models_.emplace_back("misra1a", 1, 2,
                       box({{2.3894212918E+02, S::positive}, {5.5015643181E-04, S::positive}}),
                       &misra1a);
  models_.emplace_back("gauss1", 1, 8,
                       box({{9.8778210871E+01, S::positive},
                            {1.0497276517E-02, S::positive},
                            {1.0048990633E+02, S::positive},
                            {6.7481111276E+01, S::positive},
                            {2.3129773360E+01, S::positive},
                            {7.1994503004E+01, S::positive},
                            {1.7899805021E+02, S::positive},
                            {1.8389389025E+01, S::positive}}),
                       &gauss1);
  models_.emplace_back("danwood", 1, 2,
                       box({{7.6886226176E-01, S::positive}, {3.8604055871E+00, S::positive}}),
                       &danwood);
  models_.emplace_back("nelson", 2, 3,
                       box({{2.5906836021E+00, S::positive},
                            {5.6177717026E-09, S::positive},
                            {-5.7701013174E-02, S::negative}}),
                       &nelson);
  models_.emplace_back("lanczos2", 1, 6,
                       box({{9.6251029939E-02, S::positive},
                            {1.0057332849E+00, S::positive},
                            {8.6424689056E-01, S::positive},
                            {3.0078283915E+00, S::positive},
                            {1.5529016879E+00, S::positive},
                            {5.0028798100E+00, S::positive}}),
                       &lanczos2);
  models_.emplace_back("roszman1", 1, 4,
                       box({{2.0196866396E-01, S::positive},
                            {-6.1953516256E-06, S::free},
                            {1.2044556708E+03, S::positive},
                            {-1.8134269537E+02, S::negative}}),
                       &roszman1);
  models_.emplace_back("enso", 1, 9,
                       box({{1.0510749193E+01, S::positive},
                            {3.0762128085E+00, S::free},
                            {5.3280138227E-01, S::free},
                            {4.4311088700E+01, S::positive},
                            {-1.6231428586E+00, S::free},
                            {5.2554493756E-01, S::free},
                            {2.6887614440E+01, S::positive},
                            {2.1232288488E-01, S::free},
                            {1.4966870418E+00, S::free}}),
                       &enso);
  models_.emplace_back("mgh09", 1, 4,
                       box({{1.9280693458E-01, S::positive},
                            {1.9128232873E-01, S::positive},
                            {1.2305650693E-01, S::positive},
                            {1.3606233068E-01, S::positive}}),
                       &mgh09);
  models_.emplace_back("thurber", 1, 7,
                       box({{1.2881396800E+03, S::positive},
                            {1.4910792535E+03, S::positive},
                            {5.8323836877E+02, S::positive},
                            {7.5416644291E+01, S::positive},
                            {9.6629502864E-01, S::positive},
                            {3.9797285797E-01, S::positive},
                            {4.9727297349E-02, S::positive}}),
                       &thurber);
  models_.emplace_back("rat42", 1, 3,
                       box({{7.2462237576E+01, S::positive},
                            {2.6180768402E+00, S::positive},
                            {6.7359200066E-02, S::positive}}),
                       &rat42);
}

ModelRegistry ModelRegistry::from_bounds_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open bounds file", path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!doc.is_object()) throw ParseError(fmt::format("{}: top level must be an object", path.string()));

  ModelRegistry registry;
  for (const auto& [name, entry] : doc.items()) {
    if (!entry.is_array()) {
      throw ParseError(fmt::format("{}: entry '{}' must be an array of [lb, ub] pairs", path.string(), name));
    }
    Bounds bounds;
    for (const auto& pair : entry) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ParseError(fmt::format("{}: entry '{}' must contain [lb, ub] number pairs", path.string(), name));
      }
      bounds.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    registry.override_bounds(name, std::move(bounds));
  }
  return registry;
}

const RegressionModel& ModelRegistry::get(std::string_view name) const {
  const std::string key = lower(name);
  for (const auto& m : models_) {
    if (m.name() == key) return m;
  }
  throw LookupError(fmt::format("unknown model '{}'; valid models: {}", name, fmt::join(names(), ", ")));
}

bool ModelRegistry::contains(std::string_view name) const noexcept {
  const std::string key = lower(name);
  return std::any_of(models_.begin(), models_.end(), [&](const auto& m) { return m.name() == key; });
}

std::vector<std::string> ModelRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(models_.size());
  for (const auto& m : models_) out.push_back(m.name());
  return out;
}

void ModelRegistry::override_bounds(std::string_view name, Bounds bounds) {
  const std::string key = lower(name);
  for (auto& m : models_) {
    if (m.name() == key) {
      m = m.with_bounds(std::move(bounds));
      return;
    }
  }
  throw LookupError(fmt::format("unknown model '{}' in bounds; valid models: {}", name, fmt::join(names(), ", ")));
}

std::string default_bounds_json() {
  const ModelRegistry registry;
  std::string out = "{\n";
  const auto& models = registry.models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::vector<std::string> pairs;
    for (const auto& iv : models[i].bounds()) {
      pairs.push_back(nlohmann::json::array({iv.lower, iv.upper}).dump());
    }
    out += fmt::format("  \"{}\": [{}]{}\n", models[i].name(), fmt::join(pairs, ", "),
                       i + 1 < models.size() ? "," : "");
  }
  out += "}\n";
  return out;
}

}  // namespace mvoreg
