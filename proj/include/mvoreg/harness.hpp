#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvoreg/dataset.hpp"
#include "mvoreg/model_registry.hpp"
#include "mvoreg/optimizer.hpp"
#include "mvoreg/stats.hpp"

namespace mvoreg {

struct ExperimentSpec {
  std::vector<std::string> models;
  std::vector<OptimizerKind> optimizers{OptimizerKind::pso, OptimizerKind::mvo};
  std::size_t runs = 31;
  std::uint64_t master_seed = 42;
  double train_fraction = 0.8;
  /// Population, iteration budget and algorithm constants; the seed field is ignored.
  OptimizerConfig config;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;

  /// Spec with all ten benchmark models and default settings.
  static ExperimentSpec defaults(const ModelRegistry& registry);
  /// Throws ConfigError / LookupError on invalid settings.
  void validate(const ModelRegistry& registry) const;
};

/// Seed shared by every optimizer for (model, run): fixes the hold-out split.
std::uint64_t run_seed(std::uint64_t master_seed, std::string_view model, std::size_t run_index);
std::uint64_t split_seed(std::uint64_t run_seed);
std::uint64_t optimizer_seed(std::uint64_t run_seed, OptimizerKind kind);

/// One hold-out fit: split the data with split_seed(seed), minimise training
/// MSE with the optimizer seeded by optimizer_seed(seed, kind), then score the
/// held-out rows. The result's seed is `seed`.
RunResult run_single(const RegressionModel& model, const Dataset& data, OptimizerKind kind, std::uint64_t seed,
                     double train_fraction, OptimizerConfig config = {});

struct OptimizerReport {
  OptimizerKind kind = OptimizerKind::mvo;
  stats::SummaryStats train;
  stats::SummaryStats test;
  std::vector<RunResult> runs;
};

struct ModelReport {
  std::string model;
  std::vector<OptimizerReport> optimizers;
  /// wilcoxon_signed_rank(PSO test MSEs, MVO test MSEs), paired by run index;
  /// present when both optimizers ran.
  std::optional<stats::TestDecision> comparison;

  const OptimizerReport* find(OptimizerKind kind) const;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<ModelReport> models;

  const ModelReport* find(std::string_view model) const;
};

/// All runs of all (model, optimizer) pairs. Datasets come from `data_dir`.
ExperimentReport run_experiment(const ExperimentSpec& spec, const ModelRegistry& registry,
                                const std::filesystem::path& data_dir = default_data_dir());

}  // namespace mvoreg
