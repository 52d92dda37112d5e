#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mvoreg {

/// Predictor matrix (row-major, N x k) and response vector.
class Dataset {
 public:
  Dataset() = default;
  /// Throws ParseError if sizes disagree, N == 0, or any entry is non-finite.
  Dataset(std::string name, std::size_t arity, std::vector<double> predictors,
          std::vector<double> responses);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return responses_.size(); }
  std::size_t arity() const noexcept { return arity_; }

  std::span<const double> row(std::size_t i) const {
    return {predictors_.data() + i * arity_, arity_};
  }
  double response(std::size_t i) const { return responses_[i]; }
  std::span<const double> responses() const noexcept { return responses_; }
  std::span<const double> predictors() const noexcept { return predictors_; }

  /// Rows at `indices`, in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::string name_;
  std::size_t arity_ = 0;
  std::vector<double> predictors_;
  std::vector<double> responses_;
};

/// Reads a CSV with header "x1[,x2,...],y". Errors name the file and line.
Dataset load_csv(const std::filesystem::path& path);

/// Data directory: $MVO_REGRESS_DATA_DIR if set, else the bundled directory.
std::filesystem::path default_data_dir();

/// `<data_dir>/<lower-case name>.csv`.
Dataset load_bundled(std::string_view model_name, const std::filesystem::path& data_dir = default_data_dir());

struct Split {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
};

/// Number of training rows: round-half-up of fraction * n, clamped to [1, n - 1].
std::size_t train_count(std::size_t n, double train_fraction);

/// Seeded random hold-out partition. Throws ConfigError if N < 2 or the
/// fraction is outside (0, 1).
Split holdout_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

}  // namespace mvoreg
