#pragma once

#include "sfbench/runner.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfbench {

// Result files echo the config in SI units (seconds, loss rate, bytes/s) so
// they parse back bit-identically. Timing fields that depend on measurement
// are named compute_seconds / elapsed_seconds; total_seconds is not stored,
// it is recomputed on load.
std::string result_to_json(const ScenarioResult& result, int indent = 2);
ScenarioResult result_from_json(std::string_view text);
ScenarioResult load_result(const std::filesystem::path& path);

// rep,elapsed_s,accuracy,chosen_C,chosen_epochs
std::string result_to_csv(const ScenarioResult& result);

std::string comparison_to_json(const ComparisonReport& report, int indent = 2);

std::string format_summary(const ScenarioResult& result);
std::string format_comparison(const ComparisonReport& report);

struct QuantileRow {
  std::string scenario;
  std::string metric;  // "response_time_s" or "accuracy"
  Spread spread;
};

// Two rows per scenario: one per metric, grouped by metric.
std::vector<QuantileRow> plot_rows(std::span<const ScenarioResult> results);
// scenario,metric,min,q1,median,q3,max
std::string plotdata_csv(std::span<const QuantileRow> rows);
// Self-contained SVG with one box-plot panel per metric.
std::string plotdata_svg(std::span<const QuantileRow> rows);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sfbench
