#pragma once

#include "sfbench/corpus.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sfbench {

using Tokens = std::vector<std::string>;

// Lowercase, split on non-alphanumerics, drop tokens shorter than 2 chars.
Tokens tokenize(std::string_view text);

struct SparseEntry {
  std::size_t index = 0;
  double weight = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

// Entries sorted by index, no duplicates, no explicit zeros.
struct SparseVector {
  std::vector<SparseEntry> entries;

  double squared_norm() const noexcept;
  double norm() const noexcept;
  bool empty() const noexcept { return entries.empty(); }
};

struct TfIdfModel {
  std::unordered_map<std::string, std::size_t> vocabulary;
  std::vector<double> idf;

  std::size_t size() const noexcept { return idf.size(); }
};

// Vocabulary in first-occurrence order; idf(t) = ln((1+n)/(1+df(t))) + 1.
TfIdfModel fit_tfidf(std::span<const Tokens> corpus);

// term_count * idf for in-vocabulary terms, L2-normalized.
SparseVector transform(const TfIdfModel& model, const Tokens& tokens);

struct PacHyperParams {
  double C = 1.0;
  int epochs = 5;
  std::uint64_t shuffle_seed = 0;

  bool operator==(const PacHyperParams&) const = default;
};

inline constexpr int kMaxEpochs = 1000;

struct PacModel {
  std::vector<double> weights;
  double bias = 0.0;
  PacHyperParams hyper;

  double score(const SparseVector& x) const noexcept;
};

// One PA-I update as seen by an observer: the visited example, its step and
// the margin y*(w.x+b) after the update.
struct PacStep {
  std::size_t example = 0;
  double loss = 0.0;
  double tau = 0.0;
  double margin_after = 0.0;
};
using PacObserver = std::function<void(const PacStep&)>;

// PA-I: tau = min(C, loss / (|x|^2 + 1)), w += tau*y*x, b += tau*y.
// Examples are visited in a freshly shuffled order every epoch.
PacModel pac_train(std::span<const SparseVector> vectors,
                   std::span<const int> labels, std::size_t dimension,
                   const PacHyperParams& hyper,
                   const PacObserver& observer = {});

// sign(w.x + b); a zero score predicts +1.
int pac_predict(const PacModel& model, const SparseVector& x) noexcept;

double accuracy(const PacModel& model, const TfIdfModel& vectorizer,
                std::span<const DocumentRecord> docs);

struct CvConfig {
  int folds = 5;
  std::vector<PacHyperParams> grid;
  std::uint64_t seed = 0;

  void validate(std::size_t n_train) const;
  bool operator==(const CvConfig&) const = default;
};

// C in {0.01, 0.1, 1.0} x epochs in {5, 20}.
std::vector<PacHyperParams> default_grid(std::uint64_t shuffle_seed = 0);

struct CandidateScore {
  PacHyperParams params;
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;

  bool operator==(const CandidateScore&) const = default;
};

struct CvResult {
  std::vector<CandidateScore> per_candidate;
  PacHyperParams best;
  double best_mean_accuracy = 0.0;

  bool operator==(const CvResult&) const = default;
};

// Indices into the shuffled order for each of the k folds. Fold sizes differ
// by at most one; the first n % k folds are the larger ones.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k,
                                                 std::uint64_t seed);

CvResult kfold_cv(std::span<const DocumentRecord> train,
                  const CvConfig& config);

// Fits TF-IDF on `train` and trains a PAC with `params`.
struct TrainedClassifier {
  TfIdfModel vectorizer;
  PacModel model;
};
TrainedClassifier train_classifier(std::span<const DocumentRecord> train,
                                   const PacHyperParams& params);

}  // namespace sfbench
