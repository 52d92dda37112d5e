#include "mvoreg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "mvoreg/error.hpp"
#include "mvoreg/mvo.hpp"
#include "mvoreg/objective.hpp"
#include "mvoreg/pso.hpp"

namespace mvoreg {

ExperimentSpec ExperimentSpec::defaults(const ModelRegistry& registry) {
  ExperimentSpec spec;
  spec.models = registry.names();
  return spec;
}

void ExperimentSpec::validate(const ModelRegistry& registry) const {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError(fmt::format("train fraction must lie in (0, 1), got {}", train_fraction));
  }
  if (models.empty()) throw ConfigError("no models selected");
  if (optimizers.empty()) throw ConfigError("no optimizers selected");
  for (const auto& m : models) registry.get(m);
  config.validate();
}

std::uint64_t run_seed(std::uint64_t master_seed, std::string_view model, std::size_t run_index) {
  return derive_seed({master_seed, hash_tag(model), static_cast<std::uint64_t>(run_index)});
}

std::uint64_t split_seed(std::uint64_t seed) { return derive_seed({seed, hash_tag("split")}); }

std::uint64_t optimizer_seed(std::uint64_t seed, OptimizerKind kind) {
  return derive_seed({seed, hash_tag(to_string(kind))});
}

RunResult run_single(const RegressionModel& model, const Dataset& data, OptimizerKind kind, std::uint64_t seed,
                     double train_fraction, OptimizerConfig config) {
  const Split split = holdout_split(data, train_fraction, split_seed(seed));
  const Objective train(model, data.subset(split.train_indices));
  const Objective test(model, data.subset(split.test_indices));

  config.seed = optimizer_seed(seed, kind);
  RunResult result = kind == OptimizerKind::mvo ? mvo::minimize(train, config) : pso::minimize(train, config);
  result.test_mse = test.mse(result.best_beta);
  result.seed = seed;
  return result;
}

const OptimizerReport* ModelReport::find(OptimizerKind kind) const {
  for (const auto& o : optimizers) {
    if (o.kind == kind) return &o;
  }
  return nullptr;
}

const ModelReport* ExperimentReport::find(std::string_view model) const {
  for (const auto& m : models) {
    if (m.model == model) return &m;
  }
  return nullptr;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const ModelRegistry& registry,
                                const std::filesystem::path& data_dir) {
  spec.validate(registry);

  std::vector<const RegressionModel*> models;
  std::vector<Dataset> datasets;
  for (const auto& name : spec.models) {
    models.push_back(&registry.get(name));
    datasets.push_back(load_bundled(models.back()->name(), data_dir));
  }

  const std::size_t n_opt = spec.optimizers.size();
  const std::size_t n_tasks = models.size() * n_opt * spec.runs;
  std::vector<RunResult> results(n_tasks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < n_tasks; t = next++) {
      const std::size_t run = t % spec.runs;
      const std::size_t opt = (t / spec.runs) % n_opt;
      const std::size_t m = t / (spec.runs * n_opt);
      try {
        results[t] = run_single(*models[m], datasets[m], spec.optimizers[opt],
                                run_seed(spec.master_seed, models[m]->name(), run), spec.train_fraction,
                                spec.config);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(
              Error(fmt::format("{} / {} run {}: {}", models[m]->name(), to_string(spec.optimizers[opt]), run,
                                e.what())));
        }
        next = n_tasks;
      }
    }
  };

  std::size_t n_threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, n_tasks);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  report.spec = spec;
  for (std::size_t m = 0; m < models.size(); ++m) {
    ModelReport mr;
    mr.model = models[m]->name();
    for (std::size_t opt = 0; opt < n_opt; ++opt) {
      OptimizerReport orep;
      orep.kind = spec.optimizers[opt];
      const auto first = results.begin() + static_cast<std::ptrdiff_t>((m * n_opt + opt) * spec.runs);
      orep.runs.assign(std::make_move_iterator(first),
                       std::make_move_iterator(first + static_cast<std::ptrdiff_t>(spec.runs)));
      std::vector<double> train;
      std::vector<double> test;
      for (const auto& r : orep.runs) {
        train.push_back(r.train_mse);
        test.push_back(r.test_mse);
      }
      orep.train = stats::summarize(train);
      orep.test = stats::summarize(test);
      mr.optimizers.push_back(std::move(orep));
    }
    const auto* pso_rep = mr.find(OptimizerKind::pso);
    const auto* mvo_rep = mr.find(OptimizerKind::mvo);
    if (pso_rep != nullptr && mvo_rep != nullptr) {
      std::vector<double> a;
      std::vector<double> b;
      for (std::size_t r = 0; r < spec.runs; ++r) {
        a.push_back(pso_rep->runs[r].test_mse);
        b.push_back(mvo_rep->runs[r].test_mse);
      }
      mr.comparison = stats::wilcoxon_signed_rank(a, b, 0.05);
    }
    report.models.push_back(std::move(mr));
  }
  return report;
}

}  // namespace mvoreg
