#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mvoreg/harness.hpp"

namespace mvoreg {

nlohmann::ordered_json to_json(const RunResult& run);
nlohmann::ordered_json to_json(const ExperimentReport& report);

/// Parses a document produced by to_json(ExperimentReport). Throws ParseError.
ExperimentReport report_from_json(const nlohmann::json& doc);
ExperimentReport read_report(const std::filesystem::path& path);

/// Convergence traces: header "iteration,run_1,...,run_R", one row per iteration.
std::string traces_csv(const std::vector<RunResult>& runs);

/// Mean(std) cells in 4-significant-digit scientific notation, e.g. "2.638E-01(1.246E-01)".
std::string format_cell(const stats::SummaryStats& s);
std::string format_sci(double v);

/// Training-MSE table: one row per model, one mean(std) column per optimizer.
std::string training_table(const ExperimentReport& report);
/// Testing-MSE table with Wilcoxon p-value and h columns.
std::string testing_table(const ExperimentReport& report);
/// Both tables as CSV (model, optimizer, train/test mean and std, p, h).
std::string summary_csv(const ExperimentReport& report);

/// Writes `content` to `path`, creating parent directories. Throws Error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mvoreg
