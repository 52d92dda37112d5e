// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mvoreg/cli.hpp"
#include "mvoreg/dataset.hpp"
#include "mvoreg/harness.hpp"
#include "mvoreg/model_registry.hpp"
#include "mvoreg/mvo.hpp"
#include "mvoreg/objective.hpp"
#include "mvoreg/pso.hpp"
#include "mvoreg/stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace mvoreg;

namespace {

const fs::path kData{MVOREG_TEST_DATA_DIR};

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

// Shared by criteria 1 and 2: the full default benchmark.
struct DefaultBench {
  ExperimentReport report;
  double seconds = 0.0;
};

const DefaultBench& default_bench() {
  static const DefaultBench bench = [] {
    const ModelRegistry registry = ModelRegistry::from_bounds_file(kData / "bounds.json");
    const auto start = Clock::now();
    DefaultBench b{run_experiment(ExperimentSpec::defaults(registry), registry, kData)};
    b.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return b;
  }();
  return bench;
}

Verdict directional_table() {
  const auto& b = default_bench();
  int wins = 0;
  std::string detail;
  for (const auto& m : b.report.models) {
    const double pso = m.find(OptimizerKind::pso)->test.mean;
    const double mvo = m.find(OptimizerKind::mvo)->test.mean;
    if (mvo < pso) ++wins;
  }
  bool all_h = true;
  for (const char* name : {"misra1a", "gauss1", "lanczos2", "rat42"}) {
    const int h = b.report.find(name)->comparison->h;
    detail += fmt::format(" {}:h={}", name, h);
    if (h != 1) all_h = false;
  }
  const bool fast = b.seconds < 600.0;
  return {wins >= 7 && all_h && fast, fmt::format("MVO wins {}/10;{}; {:.1f} s", wins, detail, b.seconds)};
}

Verdict magnitude_brackets() {
  const auto& r = default_bench().report;
  const double misra = r.find("misra1a")->find(OptimizerKind::mvo)->train.mean;
  const double danwood = r.find("danwood")->find(OptimizerKind::mvo)->train.mean;
  const double lanczos = r.find("lanczos2")->find(OptimizerKind::mvo)->train.mean;
  const bool ok = misra >= 0.01 && misra <= 1.0 && danwood >= 1e-5 && danwood <= 1e-2 && lanczos <= 1e-3;
  return {ok, fmt::format("misra1a {:.4g}, danwood {:.4g}, lanczos2 {:.4g}", misra, danwood, lanczos)};
}

Verdict schedules() {
  const std::size_t L = 100;
  bool ok = mvo::travelling_distance_rate(0, L, 6.0) == 1.0 && mvo::travelling_distance_rate(L, L, 6.0) == 0.0 &&
            mvo::wormhole_existence_probability(0, L, 0.2, 1.0) == 0.2 &&
            mvo::wormhole_existence_probability(L, L, 0.2, 1.0) == 1.0;
  for (std::size_t l = 0; l < L; ++l) {
    ok = ok && mvo::travelling_distance_rate(l + 1, L, 6.0) <= mvo::travelling_distance_rate(l, L, 6.0);
    ok = ok && mvo::wormhole_existence_probability(l + 1, L, 0.2, 1.0) >=
                   mvo::wormhole_existence_probability(l, L, 0.2, 1.0);
  }
  return {ok, "endpoints exact, monotone over l = 0..100"};
}

Verdict monotone_traces() {
  const ModelRegistry registry;
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (const char* name : {"misra1a", "enso", "roszman1"}) {
    const Dataset data = load_bundled(name, kData);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (auto kind : {OptimizerKind::pso, OptimizerKind::mvo}) {
        const auto r = run_single(registry.get(name), data, kind, derive_seed({seed, 0xACCE}), 0.8);
        ++checked;
        for (std::size_t l = 1; l < r.trace.size(); ++l) {
          if (r.trace[l] > r.trace[l - 1]) {
            ++bad;
            break;
          }
        }
      }
    }
  }
  return {bad == 0, fmt::format("{} traces, {} non-monotone", checked, bad)};
}

Verdict wilcoxon_oracle() {
  Rng rng(20240601);
  std::size_t mismatches = 0;
  std::size_t samples = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> a(n), b(n);
      const bool ties = k % 3 == 0;
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = ties ? static_cast<double>(rng.index(6)) : rng.uniform();
        b[i] = ties ? static_cast<double>(rng.index(6)) : rng.uniform();
      }
      const auto d = stats::wilcoxon_signed_rank(a, b);
      const auto ref = oracle::signed_rank_enumeration(a, b);
      ++samples;
      if (d.p_value != ref.p_value) ++mismatches;
    }
  }
  double worst = 0.0;
  for (std::size_t n = 10; n <= 25; ++n) {
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> diffs(n);
      const double shift = rng.uniform(-0.5, 0.5);
      for (auto& d : diffs) d = rng.uniform(-1.0, 1.0) + shift;
      const auto ranks = stats::signed_rank_magnitudes(diffs);
      double w_plus = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) w_plus += ranks[i];
      }
      worst = std::max(worst, std::abs(stats::normal_p_value(ranks, w_plus) - stats::exact_p_value(ranks, w_plus)));
    }
  }
  return {mismatches == 0 && worst < 0.02,
          fmt::format("{} exact mismatches in {}; max |approx - exact| = {:.4f}", mismatches, samples, worst)};
}

Verdict mse_oracle() {
  const ModelRegistry registry;
  Rng rng(777);
  const auto names = registry.names();
  double worst = 0.0;
  std::size_t disagreements = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto& model = registry.get(names[rng.index(names.size())]);
    const Dataset data = load_bundled(model.name(), kData);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (rng.uniform() < 0.6) idx.push_back(i);
    }
    if (idx.empty()) idx.push_back(rng.index(data.size()));
    std::vector<double> beta;
    for (const auto& iv : model.bounds()) beta.push_back(rng.uniform(iv.lower, iv.upper));

    std::vector<std::vector<double>> xs;
    std::vector<double> ys;
    for (std::size_t i : idx) {
      const auto row = data.row(i);
      xs.emplace_back(row.begin(), row.end());
      ys.push_back(data.response(i));
    }
    const double got = Objective(model, data.subset(idx)).mse(beta);
    const double want = oracle::mse(model.name(), beta, xs, ys);
    if (std::isinf(got) || std::isinf(want)) {
      if (got != want) ++disagreements;
      continue;
    }
    const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, rel);
    if (rel > 1e-12) ++disagreements;
  }
  return {disagreements == 0, fmt::format("{} disagreements, max relative error {:.2e}", disagreements, worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  ::setenv("MVO_REGRESS_DATA_DIR", MVOREG_TEST_DATA_DIR, 1);
  const fs::path root = fs::temp_directory_path() / "mvoreg_acceptance_det";
  fs::remove_all(root);
  std::vector<fs::path> dirs{root / "a", root / "b"};
  for (const auto& d : dirs) {
    const std::string out = d.string();
    const char* argv[] = {"mvo-regress", "bench", "--seed", "42", "--out", out.c_str()};
    std::ostringstream sink_out, sink_err;
    if (cli::run(6, argv, sink_out, sink_err) != 0) return {false, "bench failed: " + sink_err.str()};
  }
  std::size_t compared = 0;
  std::size_t differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext != ".json" && ext != ".csv") continue;
    const auto rel = fs::relative(entry.path(), dirs[0]);
    ++compared;
    if (!fs::exists(dirs[1] / rel) || slurp(entry.path()) != slurp(dirs[1] / rel)) ++differing;
  }
  fs::remove_all(root);
  return {compared > 0 && differing == 0, fmt::format("{} JSON/CSV files compared, {} differ", compared, differing)};
}

Verdict convex_sanity() {
  const CostFunction f = [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); };
  const Bounds box{{-10.0, 10.0}};
  int mvo_ok = 0;
  int pso_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    OptimizerConfig config;
    config.seed = seed;
    if (std::abs(mvo::minimize(f, box, config).best_beta[0] - 3.0) < 0.01) ++mvo_ok;
    if (std::abs(pso::minimize(f, box, config).best_beta[0] - 3.0) < 0.01) ++pso_ok;
  }
  return {mvo_ok >= 95 && pso_ok >= 95, fmt::format("MVO {}/100, PSO {}/100", mvo_ok, pso_ok)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 directional test-MSE comparison", directional_table},
      {"2 MVO training-MSE magnitude brackets", magnitude_brackets},
      {"3 schedule exactness", schedules},
      {"4 elitist monotone traces", monotone_traces},
      {"5 Wilcoxon oracle equivalence", wilcoxon_oracle},
      {"6 MSE oracle", mse_oracle},
      {"7 bench determinism", determinism},
      {"8 convex sanity", convex_sanity},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << name << "  (" << v.detail << ")" << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failures, criteria.size()) << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
