#include "sfbench/runner.hpp"

#include "sfbench/error.hpp"
#include "sfbench/log.hpp"
#include "sfbench/payload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace sfbench {

namespace {

constexpr std::uint64_t kRequestStream = 0x1000;
constexpr std::uint64_t kNetworkStream = 0x2000;
constexpr std::uint64_t kSplitStream = 0x3000;

[[noreturn]] void config_error(const std::string& what) {
  fail(ErrorKind::Config, "config: " + what);
}

}  // namespace

Dataset load_dataset(const DatasetSource& source) {
  if (const auto* syn = std::get_if<SyntheticSource>(&source))
    return generate_synthetic(syn->n_docs, syn->vocab_size, syn->noise, syn->seed);
  return load_csv(std::get<CsvSource>(source).path);
}

void ScenarioConfig::validate() const {
  if (name.empty()) config_error("name: must be non-empty");
  try {
    split.validate();
  } catch (const Error& e) {
    config_error(std::string("split: ") + e.what());
  }
  if (nodes.empty()) config_error("nodes: at least one compute node required");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = "nodes[" + std::to_string(i) + "]";
    if (nodes[i].node_id.empty()) config_error(where + ".id: must be non-empty");
    for (std::size_t j = 0; j < i; ++j)
      if (nodes[j].node_id == nodes[i].node_id)
        config_error(where + ".id: duplicate node id '" + nodes[i].node_id + "'");
    if (!(nodes[i].compute_scale > 0.0) || !std::isfinite(nodes[i].compute_scale))
      config_error(where + ".compute_scale: must be > 0");
    try {
      nodes[i].link.validate();
    } catch (const Error& e) {
      config_error(where + ".link: " + e.what());
    }
  }
  if (replica_count < 1) config_error("replica_count: must be >= 1");
  if (concurrency != split.train_shards.size())
    config_error("concurrency: must equal the number of train shards (" +
                 std::to_string(split.train_shards.size()) + ")");
  if (cv.folds < 2) config_error("cv.folds: must be >= 2");
  if (cv.grid.empty()) config_error("cv.grid: must be non-empty");
  for (const auto& p : cv.grid)
    if (!(p.C > 0.0) || !std::isfinite(p.C) || p.epochs < 1 || p.epochs > kMaxEpochs)
      config_error("cv.grid: candidate out of range");
  if (repetitions < 1) config_error("repetitions: must be >= 1");
  if (!(platform.overhead_seconds >= 0.0)) config_error("platform.overhead_s: must be >= 0");
}

void ScenarioConfig::set_seed(std::uint64_t value) {
  seed = value;
  split.seed = value;
}

std::uint64_t request_seed(std::uint64_t scenario_seed, std::size_t request_index) {
  return derive_seed(scenario_seed, kRequestStream + request_index);
}

std::uint64_t network_seed(std::uint64_t scenario_seed, std::size_t rep_index) {
  return derive_seed(scenario_seed, kNetworkStream + rep_index);
}

double lower_quantile(std::span<const double> values, double p) {
  if (values.empty()) fail(ErrorKind::InvalidArgument, "quantile of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto idx = static_cast<std::size_t>(
      std::floor(p * static_cast<double>(sorted.size() - 1)));
  return sorted[std::min(idx, sorted.size() - 1)];
}

Spread spread(std::span<const double> values) {
  Spread s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.q1 = lower_quantile(values, 0.25);
  s.median = lower_quantile(values, 0.5);
  s.q3 = lower_quantile(values, 0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  return s;
}

ScenarioSummary summarize(std::span<const RepetitionResult> repetitions) {
  std::vector<double> elapsed;
  std::vector<double> acc;
  for (const auto& rep : repetitions) {
    if (!rep.ok()) continue;
    elapsed.push_back(rep.elapsed_seconds);
    acc.push_back(rep.final_accuracy);
  }
  return {elapsed.size(), spread(elapsed), spread(acc)};
}

PacHyperParams select_best(std::span<const CvResult> responses) {
  if (responses.empty()) fail(ErrorKind::InvalidArgument, "select_best: no responses");
  std::size_t best = 0;
  for (std::size_t i = 1; i < responses.size(); ++i)
    if (responses[i].best_mean_accuracy > responses[best].best_mean_accuracy) best = i;
  return responses[best].best;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const Dataset dataset = load_dataset(config.dataset);
  log::info(config.name + ": dataset " + dataset.source + " with " +
            std::to_string(dataset.size()) + " records");

  const auto deployment = deploy(config.nodes, config.replica_count);

  ScenarioResult result;
  result.config = config;

  std::optional<SplitResult> parts;
  std::vector<Bytes> requests;
  std::vector<DocumentRecord> training;
  std::map<std::pair<double, std::pair<int, std::uint64_t>>, double> final_cache;

  auto prepare = [&](std::uint64_t split_seed) {
    SplitSpec spec = config.split;
    spec.seed = split_seed;
    try {
      parts = split(dataset, spec);
    } catch (const Error& e) {
      fail(ErrorKind::Config, std::string("config: split: ") + e.what());
    }
    requests.clear();
    for (std::size_t i = 0; i < parts->shards.size(); ++i) {
      CvConfig cv = config.cv;
      cv.seed = request_seed(config.seed, i);
      requests.push_back(encode_request(parts->shards[i], cv));
    }
    training = parts->training_union();
    std::unordered_set<std::size_t> train_ids;
    for (const auto& d : training) train_ids.insert(d.id);
    for (const auto& d : parts->test)
      if (train_ids.contains(d.id))
        fail(ErrorKind::Runtime, "test record " + std::to_string(d.id) +
                                     " also appears in a training shard");
    final_cache.clear();
  };

  if (!config.resplit_per_repetition) prepare(config.split.seed);

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    if (config.resplit_per_repetition)
      prepare(derive_seed(config.split.seed, kSplitStream + rep));

    RepetitionResult rr;
    rr.rep_index = rep;
    auto batch = invoke_all(deployment, config.nodes, requests,
                            network_seed(config.seed, rep), config.platform);
    rr.elapsed_seconds = batch.elapsed_seconds;
    rr.records = std::move(batch.records);

    std::vector<CvResult> responses;
    for (const auto& rec : rr.records)
      if (rec.ok()) responses.push_back(*rec.cv_result);

    if (responses.empty()) {
      rr.error = "all invocations failed";
      for (const auto& rec : rr.records)
        if (!rec.error.empty()) {
          rr.error += ": " + rec.error;
          break;
        }
      log::error(config.name + " rep " + std::to_string(rep) + ": " + rr.error);
    } else {
      rr.chosen_params = select_best(responses);
      const auto key = std::make_pair(
          rr.chosen_params.C,
          std::make_pair(rr.chosen_params.epochs, rr.chosen_params.shuffle_seed));
      auto it = final_cache.find(key);
      if (it == final_cache.end()) {
        const auto trained = train_classifier(training, rr.chosen_params);
        it = final_cache
                 .emplace(key, accuracy(trained.model, trained.vectorizer, parts->test))
                 .first;
      }
      rr.final_accuracy = it->second;
    }
    log::info(config.name + " rep " + std::to_string(rep) + ": elapsed " +
              std::to_string(rr.elapsed_seconds) + " s, accuracy " +
              std::to_string(rr.final_accuracy));
    result.repetitions.push_back(std::move(rr));
  }
  result.summary = summarize(result.repetitions);
  return result;
}

ComparisonReport compare(const ScenarioResult& a, const ScenarioResult& b) {
  if (a.summary.successful_repetitions == 0 || b.summary.successful_repetitions == 0)
    fail(ErrorKind::InvalidArgument, "compare: both results need successful repetitions");
  ComparisonReport r;
  r.scenario_a = a.config.name;
  r.scenario_b = b.config.name;
  r.summary_a = a.summary;
  r.summary_b = b.summary;
  const double ma = a.summary.elapsed_seconds.median;
  const double mb = b.summary.elapsed_seconds.median;
  r.median_response_reduction_pct = mb == 0.0 ? 0.0 : (mb - ma) / mb * 100.0;
  r.median_accuracy_delta_pp =
      (a.summary.final_accuracy.median - b.summary.final_accuracy.median) * 100.0;
  return r;
}

}  // namespace sfbench
