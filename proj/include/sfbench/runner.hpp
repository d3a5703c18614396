#pragma once

#include "sfbench/corpus.hpp"
#include "sfbench/faas.hpp"
#include "sfbench/textml.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sfbench {

struct SyntheticSource {
  std::size_t n_docs = 3150;
  std::size_t vocab_size = 2000;
  double noise = 0.15;
  std::uint64_t seed = 42;

  bool operator==(const SyntheticSource&) const = default;
};

struct CsvSource {
  std::string path;

  bool operator==(const CsvSource&) const = default;
};

using DatasetSource = std::variant<SyntheticSource, CsvSource>;

Dataset load_dataset(const DatasetSource& source);

// One experiment arm. `seed` is the master seed: the split, every request's
// cross-validation shuffle and the network samples all derive from it.
struct ScenarioConfig {
  std::string name;
  DatasetSource dataset;
  SplitSpec split;
  bool resplit_per_repetition = false;
  std::vector<ComputeNode> nodes;
  std::size_t replica_count = 1;
  std::size_t concurrency = 1;
  CvConfig cv;
  std::size_t repetitions = 20;
  std::uint64_t seed = 0;
  PlatformOptions platform;

  // Throws Error(Config) naming the offending field.
  void validate() const;
  // Sets the master seed and the split seed that follows it.
  void set_seed(std::uint64_t value);
  bool operator==(const ScenarioConfig&) const = default;
};

struct RepetitionResult {
  std::size_t rep_index = 0;
  double elapsed_seconds = 0.0;
  PacHyperParams chosen_params;
  double final_accuracy = 0.0;
  std::vector<InvocationRecord> records;
  std::string error;  // set when every invocation of the repetition failed

  bool ok() const noexcept { return error.empty(); }
  bool operator==(const RepetitionResult&) const = default;
};

struct Spread {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;

  double iqr() const noexcept { return q3 - q1; }
  bool operator==(const Spread&) const = default;
};

// Order statistic at sorted[floor(p * (n - 1))]; for p = 0.5 and even n this
// is the lower-middle element.
double lower_quantile(std::span<const double> values, double p);
Spread spread(std::span<const double> values);

struct ScenarioSummary {
  std::size_t successful_repetitions = 0;
  Spread elapsed_seconds;
  Spread final_accuracy;

  bool operator==(const ScenarioSummary&) const = default;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RepetitionResult> repetitions;
  ScenarioSummary summary;

  bool operator==(const ScenarioResult&) const = default;
};

ScenarioSummary summarize(std::span<const RepetitionResult> repetitions);

struct ComparisonReport {
  std::string scenario_a;
  std::string scenario_b;
  // (median_b - median_a) / median_b * 100, a being the proposed approach.
  double median_response_reduction_pct = 0.0;
  // (median_acc_a - median_acc_b) * 100
  double median_accuracy_delta_pp = 0.0;
  ScenarioSummary summary_a;
  ScenarioSummary summary_b;

  bool operator==(const ComparisonReport&) const = default;
};

// Highest best_mean_accuracy; ties go to the lowest index.
PacHyperParams select_best(std::span<const CvResult> responses);

ScenarioResult run_scenario(const ScenarioConfig& config);

ComparisonReport compare(const ScenarioResult& a, const ScenarioResult& b);

// Per-request seed for the cross-validation shuffle.
std::uint64_t request_seed(std::uint64_t scenario_seed, std::size_t request_index);
// Seed of the network sampling streams for one repetition.
std::uint64_t network_seed(std::uint64_t scenario_seed, std::size_t rep_index);

}  // namespace sfbench
