#include "mvoreg/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mvoreg/dataset.hpp"
#include "mvoreg/error.hpp"
#include "mvoreg/harness.hpp"
#include "mvoreg/model_registry.hpp"
#include "mvoreg/report_io.hpp"
#include "mvoreg/svg.hpp"

namespace mvoreg::cli {
namespace {

namespace fs = std::filesystem;

/// Failures caused by the invocation itself (bad names, bad values).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CommonOptions {
  std::uint64_t seed = 42;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> pop;
  std::string bounds;
  std::string out;
};

ModelRegistry load_registry(const std::string& bounds_flag, const fs::path& data_dir) {
  if (!bounds_flag.empty()) return ModelRegistry::from_bounds_file(bounds_flag);
  const fs::path bundled = data_dir / "bounds.json";
  if (fs::exists(bundled)) return ModelRegistry::from_bounds_file(bundled);
  return ModelRegistry();
}

OptimizerConfig make_config(const CommonOptions& opts) {
  OptimizerConfig config;
  if (opts.iters) config.max_iterations = *opts.iters;
  if (opts.pop) config.population_size = *opts.pop;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return config;
}

const RegressionModel& lookup(const ModelRegistry& registry, const std::string& name) {
  try {
    return registry.get(name);
  } catch (const LookupError& e) {
    throw UsageError(e.what());
  }
}

svg::Plot fit_plot_frame(const RegressionModel& model, OptimizerKind kind, const char* part) {
  svg::Plot plot;
  plot.title = fmt::format("{} fit on {} data ({})", model.name(), part, to_string(kind));
  plot.x_label = model.arity() == 1 ? "x" : "sample";
  plot.y_label = "y";
  return plot;
}

std::string fit_svg(const RegressionModel& model, OptimizerKind kind, const Dataset& rows,
                    const std::vector<double>& beta, const char* part) {
  svg::Series observed{"observed", {}, {}, svg::Series::Style::points, "#d62728"};
  svg::Series fitted{"model", {}, {}, svg::Series::Style::line, "#1f77b4"};
  if (model.arity() == 1) {
    double lo = rows.row(0)[0];
    double hi = lo;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      observed.x.push_back(rows.row(i)[0]);
      observed.y.push_back(rows.response(i));
      lo = std::min(lo, rows.row(i)[0]);
      hi = std::max(hi, rows.row(i)[0]);
    }
    constexpr int kSamples = 400;
    for (int s = 0; s <= kSamples; ++s) {
      const double x = lo + (hi - lo) * s / kSamples;
      const double xs[] = {x};
      fitted.x.push_back(x);
      fitted.y.push_back(model.evaluate(beta, xs));
    }
  } else {
    // Several predictors: observed and predicted responses against sample number.
    fitted.style = svg::Series::Style::points;
    fitted.label = "predicted";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      observed.x.push_back(static_cast<double>(i + 1));
      observed.y.push_back(rows.response(i));
      fitted.x.push_back(static_cast<double>(i + 1));
      fitted.y.push_back(model.evaluate(beta, rows.row(i)));
    }
  }
  return svg::render(fit_plot_frame(model, kind, part), {observed, fitted});
}

std::string convergence_svg(const ModelReport& m) {
  static const char* const colors[] = {"#ff7f0e", "#1f77b4"};
  svg::Plot plot;
  plot.title = fmt::format("{}: mean best-so-far training MSE", m.model);
  plot.x_label = "iteration";
  plot.y_label = "MSE";
  plot.log_y = true;
  std::vector<svg::Series> series;
  for (std::size_t k = 0; k < m.optimizers.size(); ++k) {
    const auto& o = m.optimizers[k];
    svg::Series s{std::string(to_string(o.kind)), {}, {}, svg::Series::Style::line, colors[k % 2]};
    const std::size_t length = o.runs.front().trace.size();
    for (std::size_t l = 0; l < length; ++l) {
      double sum = 0.0;
      for (const auto& r : o.runs) sum += r.trace[l];
      s.x.push_back(static_cast<double>(l + 1));
      s.y.push_back(sum / static_cast<double>(o.runs.size()));
      if (s.y.back() <= 0.0) plot.log_y = false;
    }
    series.push_back(std::move(s));
  }
  return svg::render(plot, series);
}

int cmd_list(std::ostream& out, const std::string& bounds_flag) {
  const fs::path data_dir = default_data_dir();
  const ModelRegistry registry = load_registry(bounds_flag, data_dir);
  out << fmt::format("{:<10} {:>12} {:>10} {:>8}  {}\n", "model", "coefficients", "predictors", "samples", "bounds");
  for (const auto& m : registry.models()) {
    std::string samples = "?";
    try {
      samples = std::to_string(load_bundled(m.name(), data_dir).size());
    } catch (const Error&) {
    }
    std::vector<std::string> boxes;
    for (const auto& iv : m.bounds()) boxes.push_back(fmt::format("[{:.4g}, {:.4g}]", iv.lower, iv.upper));
    out << fmt::format("{:<10} {:>12} {:>10} {:>8}  {}\n", m.name(), m.num_coefficients(), m.arity(), samples,
                       fmt::join(boxes, " "));
  }
  return kExitOk;
}

int cmd_fit(std::ostream& out, const std::string& model_name, const std::string& optimizer,
            const CommonOptions& opts, double train_fraction) {
  const fs::path data_dir = default_data_dir();
  const ModelRegistry registry = load_registry(opts.bounds, data_dir);
  const RegressionModel& model = lookup(registry, model_name);
  const OptimizerKind kind = parse_optimizer(optimizer);
  const OptimizerConfig config = make_config(opts);
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw UsageError(fmt::format("--train-fraction must lie in (0, 1), got {}", train_fraction));
  }

  const Dataset data = load_bundled(model.name(), data_dir);
  const RunResult result = run_single(model, data, kind, opts.seed, train_fraction, config);
  const Split split = holdout_split(data, train_fraction, split_seed(opts.seed));

  const fs::path dir = opts.out.empty() ? fs::path("out") : fs::path(opts.out);
  const std::string stem = fmt::format("{}_{}", model.name(), to_string(kind));
  auto doc = to_json(result);
  doc["model"] = model.name();
  doc["optimizer"] = to_string(kind);
  write_file(dir / (stem + "_run.json"), doc.dump(2) + "\n");
  write_file(dir / (stem + "_convergence.csv"), traces_csv({result}));
  write_file(dir / (stem + "_train_fit.svg"),
             fit_svg(model, kind, data.subset(split.train_indices), result.best_beta, "training"));
  write_file(dir / (stem + "_test_fit.svg"),
             fit_svg(model, kind, data.subset(split.test_indices), result.best_beta, "testing"));

  out << fmt::format("{} / {}  seed {}\n", model.name(), to_string(kind), opts.seed);
  out << fmt::format("  beta      = [{}]\n", fmt::join(result.best_beta, ", "));
  out << fmt::format("  train MSE = {}\n  test MSE  = {}\n", format_sci(result.train_mse), format_sci(result.test_mse));
  out << fmt::format("  artifacts in {}\n", dir.string());
  return kExitOk;
}

int cmd_bench(std::ostream& out, std::ostream& err, const std::vector<std::string>& models,
              std::optional<std::size_t> runs, const CommonOptions& opts) {
  const fs::path data_dir = default_data_dir();
  const ModelRegistry registry = load_registry(opts.bounds, data_dir);

  ExperimentSpec spec = ExperimentSpec::defaults(registry);
  if (!models.empty()) {
    spec.models.clear();
    for (const auto& m : models) spec.models.push_back(lookup(registry, m).name());
  }
  if (runs) {
    if (*runs < 1) throw UsageError("--runs must be >= 1");
    spec.runs = *runs;
  }
  spec.master_seed = opts.seed;
  spec.config = make_config(opts);

  err << fmt::format("bench: {} model(s) x {} optimizer(s) x {} run(s), pop {}, {} iterations, seed {}\n",
                     spec.models.size(), spec.optimizers.size(), spec.runs, spec.config.population_size,
                     spec.config.max_iterations, spec.master_seed);
  const ExperimentReport report = run_experiment(spec, registry, data_dir);

  const fs::path dir = opts.out.empty() ? fs::path("bench_out") : fs::path(opts.out);
  write_file(dir / "report.json", to_json(report).dump(2) + "\n");
  const std::string train_table = training_table(report);
  const std::string test_table = testing_table(report);
  write_file(dir / "table_training.txt", train_table);
  write_file(dir / "table_testing.txt", test_table);
  for (const auto& m : report.models) {
    for (const auto& o : m.optimizers) {
      write_file(dir / "traces" / fmt::format("{}_{}.csv", m.model, to_string(o.kind)), traces_csv(o.runs));
    }
    write_file(dir / fmt::format("convergence_{}.svg", m.model), convergence_svg(m));
  }

  out << "Training MSE, mean(std)\n" << train_table << "\nTesting MSE, mean(std)\n" << test_table;
  err << fmt::format("bench: artifacts in {}\n", dir.string());
  return kExitOk;
}

int cmd_report(std::ostream& out, const std::string& path, const std::string& format) {
  const ExperimentReport report = read_report(path);
  if (format == "csv") {
    out << summary_csv(report);
  } else {
    out << "Training MSE, mean(std)\n" << training_table(report) << "\nTesting MSE, mean(std)\n"
        << testing_table(report);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear regression with the Multi-Verse Optimizer and a PSO baseline", "mvo-regress"};
  app.require_subcommand(1);

  std::string list_bounds;
  auto* list = app.add_subcommand("list", "List the benchmark models and their search bounds");
  list->add_option("--bounds", list_bounds, "JSON bounds file")->check(CLI::ExistingFile);

  CommonOptions fit_opts;
  std::string fit_model;
  std::string fit_optimizer;
  double train_fraction = 0.8;
  auto* fit = app.add_subcommand("fit", "Fit one model once and write run artifacts");
  fit->add_option("model", fit_model, "Model name")->required();
  fit->add_option("--optimizer", fit_optimizer, "Optimizer")->required()->check(CLI::IsMember({"mvo", "pso"}));
  fit->add_option("--seed", fit_opts.seed, "Run seed");
  fit->add_option("--iters", fit_opts.iters, "Iterations");
  fit->add_option("--pop", fit_opts.pop, "Population size");
  fit->add_option("--train-fraction", train_fraction, "Fraction of rows used for training");
  fit->add_option("--bounds", fit_opts.bounds, "JSON bounds file")->check(CLI::ExistingFile);
  fit->add_option("--out", fit_opts.out, "Output directory (default: out)");

  CommonOptions bench_opts;
  std::vector<std::string> bench_models;
  std::optional<std::size_t> bench_runs;
  auto* bench = app.add_subcommand("bench", "Run the full PSO vs MVO benchmark");
  bench->add_option("--models", bench_models, "Comma-separated model names")->delimiter(',');
  bench->add_option("--runs", bench_runs, "Independent runs per model and optimizer (default 31)");
  bench->add_option("--seed", bench_opts.seed, "Master seed");
  bench->add_option("--iters", bench_opts.iters, "Iterations");
  bench->add_option("--pop", bench_opts.pop, "Population size");
  bench->add_option("--bounds", bench_opts.bounds, "JSON bounds file")->check(CLI::ExistingFile);
  bench->add_option("--out", bench_opts.out, "Output directory (default: bench_out)");

  std::string report_path;
  std::string report_format = "text";
  auto* report = app.add_subcommand("report", "Print tables from a saved report.json");
  report->add_option("report", report_path, "Path to report.json")->required();
  report->add_option("--format", report_format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*list) return cmd_list(out, list_bounds);
    if (*fit) return cmd_fit(out, fit_model, fit_optimizer, fit_opts, train_fraction);
    if (*bench) return cmd_bench(out, err, bench_models, bench_runs, bench_opts);
    if (*report) return cmd_report(out, report_path, report_format);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mvoreg::cli
