#include "mvoreg/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "mvoreg/error.hpp"
#include "mvoreg/rng.hpp"

#ifndef MVOREG_DEFAULT_DATA_DIR
#define MVOREG_DEFAULT_DATA_DIR "data"
#endif

namespace mvoreg {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Dataset::Dataset(std::string name, std::size_t arity, std::vector<double> predictors,
                 std::vector<double> responses)
    : name_(std::move(name)),
      arity_(arity),
      predictors_(std::move(predictors)),
      responses_(std::move(responses)) {
  if (responses_.empty()) throw ParseError(fmt::format("dataset '{}' has no rows", name_));
  if (arity_ == 0 || predictors_.size() != responses_.size() * arity_) {
    throw ParseError(fmt::format("dataset '{}': predictor matrix does not match {} rows x {} columns",
                                 name_, responses_.size(), arity_));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(predictors_.begin(), predictors_.end(), finite) ||
      !std::all_of(responses_.begin(), responses_.end(), finite)) {
    throw ParseError(fmt::format("dataset '{}' contains non-finite values", name_));
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(indices.size() * arity_);
  y.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto r = row(i);
    x.insert(x.end(), r.begin(), r.end());
    y.push_back(responses_[i]);
  }
  return Dataset(name_, arity_, std::move(x), std::move(y));
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));

  const std::string where = path.string();
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(fmt::format("{}:1: missing header", where));
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = split_fields(trim(line));
  if (header.size() < 2) throw ParseError(fmt::format("{}:1: header needs at least x1,y", where));
  const std::size_t k = header.size() - 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (trim(header[j]) != fmt::format("x{}", j + 1)) {
      throw ParseError(fmt::format("{}:1: expected column 'x{}', found '{}'", where, j + 1, trim(header[j])));
    }
  }
  if (trim(header.back()) != "y") {
    throw ParseError(fmt::format("{}:1: last column must be 'y', found '{}'", where, trim(header.back())));
  }

  std::vector<double> x;
  std::vector<double> y;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != k + 1) {
      throw ParseError(fmt::format("{}:{}: expected {} fields, found {}", where, line_no, k + 1, fields.size()));
    }
    for (std::size_t j = 0; j <= k; ++j) {
      double v = 0.0;
      if (!parse_double(trim(fields[j]), v)) {
        throw ParseError(fmt::format("{}:{}: field {} is not a finite number: '{}'", where, line_no, j + 1,
                                     trim(fields[j])));
      }
      (j < k ? x : y).push_back(v);
    }
  }
  if (y.empty()) throw ParseError(fmt::format("{}: no data rows", where));
  return Dataset(path.stem().string(), k, std::move(x), std::move(y));
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("MVO_REGRESS_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return MVOREG_DEFAULT_DATA_DIR;
}

Dataset load_bundled(std::string_view model_name, const std::filesystem::path& data_dir) {
  std::string file(model_name);
  std::transform(file.begin(), file.end(), file.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return load_csv(data_dir / (file + ".csv"));
}

std::size_t train_count(std::size_t n, double train_fraction) {
  const auto rounded = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
  return std::clamp<std::size_t>(rounded, 1, n - 1);
}

Split holdout_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  const std::size_t n = ds.size();
  if (n < 2) throw ConfigError(fmt::format("dataset '{}' has {} row(s); hold-out needs at least 2", ds.name(), n));
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError(fmt::format("train fraction must lie in (0, 1), got {}", train_fraction));
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);

  const std::size_t n_train = train_count(n, train_fraction);
  Split split;
  split.seed = seed;
  split.train_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return split;
}

}  // namespace mvoreg
