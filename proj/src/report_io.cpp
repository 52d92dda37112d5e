#include "mvoreg/report_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "mvoreg/error.hpp"

namespace mvoreg {
namespace {

using ojson = nlohmann::ordered_json;

// JSON has no inf/nan; they are written as null and read back as NaN.
double number_or_nan(const nlohmann::json& v) {
  return v.is_number() ? v.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

ojson to_json(const stats::SummaryStats& s) { return {{"mean", s.mean}, {"std", s.std}, {"n", s.n}}; }

stats::SummaryStats summary_from_json(const nlohmann::json& j) {
  return {number_or_nan(j.at("mean")), number_or_nan(j.at("std")), j.at("n").get<std::size_t>()};
}

RunResult run_from_json(const nlohmann::json& j) {
  RunResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& v : j.at("best_beta")) r.best_beta.push_back(number_or_nan(v));
  r.train_mse = number_or_nan(j.at("train_mse"));
  r.test_mse = number_or_nan(j.at("test_mse"));
  for (const auto& v : j.at("trace")) r.trace.push_back(number_or_nan(v));
  return r;
}

std::string display_optimizer(OptimizerKind kind) { return kind == OptimizerKind::mvo ? "MVO" : "PSO"; }

}  // namespace

ojson to_json(const RunResult& run) {
  return {{"seed", run.seed},
          {"best_beta", run.best_beta},
          {"train_mse", run.train_mse},
          {"test_mse", run.test_mse},
          {"trace", run.trace}};
}

ojson to_json(const ExperimentReport& report) {
  const auto& spec = report.spec;
  ojson optimizers = ojson::array();
  for (auto k : spec.optimizers) optimizers.push_back(to_string(k));
  ojson doc;
  doc["spec"] = {{"models", spec.models},
                 {"optimizers", optimizers},
                 {"runs", spec.runs},
                 {"master_seed", spec.master_seed},
                 {"train_fraction", spec.train_fraction},
                 {"population_size", spec.config.population_size},
                 {"max_iterations", spec.config.max_iterations},
                 {"mvo",
                  {{"wep_min", spec.config.mvo.wep_min},
                   {"wep_max", spec.config.mvo.wep_max},
                   {"exploitation_accuracy", spec.config.mvo.exploitation_accuracy}}},
                 {"pso",
                  {{"w_max", spec.config.pso.w_max},
                   {"w_min", spec.config.pso.w_min},
                   {"c1", spec.config.pso.c1},
                   {"c2", spec.config.pso.c2}}}};
  ojson models = ojson::array();
  for (const auto& m : report.models) {
    ojson entry;
    entry["model"] = m.model;
    ojson opts = ojson::array();
    for (const auto& o : m.optimizers) {
      ojson runs = ojson::array();
      for (const auto& r : o.runs) runs.push_back(to_json(r));
      opts.push_back({{"optimizer", to_string(o.kind)},
                      {"train", to_json(o.train)},
                      {"test", to_json(o.test)},
                      {"runs", std::move(runs)}});
    }
    entry["optimizers"] = std::move(opts);
    if (m.comparison) {
      const auto& c = *m.comparison;
      entry["comparison"] = {{"p_value", c.p_value}, {"h", c.h},           {"alpha", c.alpha},
                             {"w_plus", c.w_plus},   {"w_minus", c.w_minus}, {"n_used", c.n_used},
                             {"exact", c.exact}};
    } else {
      entry["comparison"] = nullptr;
    }
    models.push_back(std::move(entry));
  }
  doc["models"] = std::move(models);
  return doc;
}

ExperimentReport report_from_json(const nlohmann::json& doc) {
  try {
    ExperimentReport report;
    const auto& s = doc.at("spec");
    auto& spec = report.spec;
    spec.models = s.at("models").get<std::vector<std::string>>();
    spec.optimizers.clear();
    for (const auto& k : s.at("optimizers")) spec.optimizers.push_back(parse_optimizer(k.get<std::string>()));
    spec.runs = s.at("runs").get<std::size_t>();
    spec.master_seed = s.at("master_seed").get<std::uint64_t>();
    spec.train_fraction = s.at("train_fraction").get<double>();
    spec.config.population_size = s.at("population_size").get<std::size_t>();
    spec.config.max_iterations = s.at("max_iterations").get<std::size_t>();
    spec.config.mvo.wep_min = s.at("mvo").at("wep_min").get<double>();
    spec.config.mvo.wep_max = s.at("mvo").at("wep_max").get<double>();
    spec.config.mvo.exploitation_accuracy = s.at("mvo").at("exploitation_accuracy").get<double>();
    spec.config.pso.w_max = s.at("pso").at("w_max").get<double>();
    spec.config.pso.w_min = s.at("pso").at("w_min").get<double>();
    spec.config.pso.c1 = s.at("pso").at("c1").get<double>();
    spec.config.pso.c2 = s.at("pso").at("c2").get<double>();

    for (const auto& m : doc.at("models")) {
      ModelReport mr;
      mr.model = m.at("model").get<std::string>();
      for (const auto& o : m.at("optimizers")) {
        OptimizerReport orep;
        orep.kind = parse_optimizer(o.at("optimizer").get<std::string>());
        orep.train = summary_from_json(o.at("train"));
        orep.test = summary_from_json(o.at("test"));
        for (const auto& r : o.at("runs")) orep.runs.push_back(run_from_json(r));
        mr.optimizers.push_back(std::move(orep));
      }
      const auto& c = m.at("comparison");
      if (!c.is_null()) {
        stats::TestDecision d;
        d.p_value = number_or_nan(c.at("p_value"));
        d.h = c.at("h").get<int>();
        d.alpha = c.at("alpha").get<double>();
        d.w_plus = c.at("w_plus").get<double>();
        d.w_minus = c.at("w_minus").get<double>();
        d.n_used = c.at("n_used").get<std::size_t>();
        d.exact = c.at("exact").get<bool>();
        mr.comparison = d;
      }
      report.models.push_back(std::move(mr));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("malformed report: {}", e.what()));
  } catch (const ConfigError& e) {
    throw ParseError(fmt::format("malformed report: {}", e.what()));
  }
}

ExperimentReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open report", path.string()));
  try {
    return report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string traces_csv(const std::vector<RunResult>& runs) {
  std::string out = "iteration";
  for (std::size_t r = 0; r < runs.size(); ++r) out += fmt::format(",run_{}", r + 1);
  out += '\n';
  const std::size_t length = runs.empty() ? 0 : runs.front().trace.size();
  for (std::size_t l = 0; l < length; ++l) {
    out += fmt::format("{}", l + 1);
    for (const auto& r : runs) out += fmt::format(",{}", r.trace[l]);
    out += '\n';
  }
  return out;
}

std::string format_sci(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.3E}", v);
}

std::string format_cell(const stats::SummaryStats& s) {
  return fmt::format("{}({})", format_sci(s.mean), format_sci(s.std));
}

std::string training_table(const ExperimentReport& report) {
  std::string out = fmt::format("{:<10}", "Model");
  for (auto k : report.spec.optimizers) out += fmt::format("  {:<24}", display_optimizer(k));
  out += '\n';
  for (const auto& m : report.models) {
    out += fmt::format("{:<10}", m.model);
    for (const auto& o : m.optimizers) out += fmt::format("  {:<24}", format_cell(o.train));
    out += '\n';
  }
  return out;
}

std::string testing_table(const ExperimentReport& report) {
  std::string out = fmt::format("{:<10}", "Model");
  for (auto k : report.spec.optimizers) out += fmt::format("  {:<24}", display_optimizer(k));
  out += fmt::format("  {:<10}  {}\n", "p-value", "h");
  for (const auto& m : report.models) {
    out += fmt::format("{:<10}", m.model);
    for (const auto& o : m.optimizers) out += fmt::format("  {:<24}", format_cell(o.test));
    if (m.comparison) {
      out += fmt::format("  {:<10}  {}", format_sci(m.comparison->p_value), m.comparison->h);
    } else {
      out += fmt::format("  {:<10}  {}", "-", "-");
    }
    out += '\n';
  }
  return out;
}

std::string summary_csv(const ExperimentReport& report) {
  std::string out = "model,optimizer,train_mean,train_std,test_mean,test_std,p_value,h\n";
  for (const auto& m : report.models) {
    for (const auto& o : m.optimizers) {
      out += fmt::format("{},{},{},{},{},{},", m.model, to_string(o.kind), o.train.mean, o.train.std, o.test.mean,
                         o.test.std);
      if (m.comparison) {
        out += fmt::format("{},{}\n", m.comparison->p_value, m.comparison->h);
      } else {
        out += ",\n";
      }
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("{}: cannot open for writing", path.string()));
  out << content;
  out.flush();
  if (!out) throw Error(fmt::format("{}: write failed", path.string()));
}

}  // namespace mvoreg
