#include "sfbench/textml.hpp"

#include "sfbench/error.hpp"
#include "sfbench/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

namespace sfbench {

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) out.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

double SparseVector::squared_norm() const noexcept {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight * e.weight;
  return s;
}

double SparseVector::norm() const noexcept { return std::sqrt(squared_norm()); }

TfIdfModel fit_tfidf(std::span<const Tokens> corpus) {
  if (corpus.empty()) fail(ErrorKind::InvalidArgument, "tfidf: empty corpus");
  TfIdfModel model;
  std::vector<std::size_t> df;
  std::vector<std::size_t> last_seen;  // last doc index + 1 per term
  std::size_t total_tokens = 0;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (const auto& tok : corpus[d]) {
      ++total_tokens;
      auto [it, inserted] = model.vocabulary.try_emplace(tok, df.size());
      if (inserted) {
        df.push_back(0);
        last_seen.push_back(0);
      }
      const auto idx = it->second;
      if (last_seen[idx] != d + 1) {
        last_seen[idx] = d + 1;
        ++df[idx];
      }
    }
  }
  if (total_tokens == 0)
    fail(ErrorKind::InvalidArgument, "tfidf: corpus has no tokens");
  const double n = static_cast<double>(corpus.size());
  model.idf.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t)
    model.idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
  return model;
}

SparseVector transform(const TfIdfModel& model, const Tokens& tokens) {
  std::map<std::size_t, double> counts;
  for (const auto& tok : tokens) {
    const auto it = model.vocabulary.find(tok);
    if (it != model.vocabulary.end()) counts[it->second] += 1.0;
  }
  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [index, count] : counts)
    v.entries.push_back({index, count * model.idf[index]});
  const double norm = v.norm();
  if (norm > 0.0)
    for (auto& e : v.entries) e.weight /= norm;
  return v;
}

double PacModel::score(const SparseVector& x) const noexcept {
  double s = bias;
  for (const auto& e : x.entries)
    if (e.index < weights.size()) s += weights[e.index] * e.weight;
  return s;
}

PacModel pac_train(std::span<const SparseVector> vectors,
                   std::span<const int> labels, std::size_t dimension,
                   const PacHyperParams& hyper, const PacObserver& observer) {
  if (vectors.size() != labels.size())
    fail(ErrorKind::InvalidArgument, "pac_train: vectors/labels length mismatch");
  if (vectors.empty()) fail(ErrorKind::InvalidArgument, "pac_train: no examples");
  if (!(hyper.C > 0.0) || !std::isfinite(hyper.C))
    fail(ErrorKind::InvalidArgument, "pac_train: C must be finite and > 0");
  if (hyper.epochs < 1 || hyper.epochs > kMaxEpochs)
    fail(ErrorKind::InvalidArgument, "pac_train: epochs out of range");

  PacModel model;
  model.weights.assign(dimension, 0.0);
  model.hyper = hyper;

  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(hyper.shuffle_seed);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    seeded_shuffle(order, rng);
    for (const auto i : order) {
      const auto& x = vectors[i];
      const double y = labels[i] >= 0 ? 1.0 : -1.0;
      const double loss = std::max(0.0, 1.0 - y * model.score(x));
      double tau = 0.0;
      if (loss > 0.0) {
        // The +1 treats the bias as an always-on unit feature.
        tau = std::min(hyper.C, loss / (x.squared_norm() + 1.0));
        for (const auto& e : x.entries) model.weights[e.index] += tau * y * e.weight;
        model.bias += tau * y;
      }
      if (observer) observer({i, loss, tau, y * model.score(x)});
    }
  }
  return model;
}

int pac_predict(const PacModel& model, const SparseVector& x) noexcept {
  return model.score(x) >= 0.0 ? 1 : -1;
}

double accuracy(const PacModel& model, const TfIdfModel& vectorizer,
                std::span<const DocumentRecord> docs) {
  if (docs.empty()) fail(ErrorKind::InvalidArgument, "accuracy: no documents");
  std::size_t correct = 0;
  for (const auto& doc : docs) {
    const auto x = transform(vectorizer, tokenize(doc.text));
    if (pac_predict(model, x) == label_sign(doc.label)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

void CvConfig::validate(std::size_t n_train) const {
  if (folds < 2) fail(ErrorKind::InvalidArgument, "cv: folds must be >= 2");
  if (static_cast<std::size_t>(folds) > n_train)
    fail(ErrorKind::InvalidArgument,
         "cv: folds (" + std::to_string(folds) + ") exceed training records (" +
             std::to_string(n_train) + ")");
  if (grid.empty()) fail(ErrorKind::InvalidArgument, "cv: empty hyperparameter grid");
  for (const auto& p : grid)
    if (!(p.C > 0.0) || !std::isfinite(p.C) || p.epochs < 1 || p.epochs > kMaxEpochs)
      fail(ErrorKind::InvalidArgument, "cv: invalid grid candidate");
}

std::vector<PacHyperParams> default_grid(std::uint64_t shuffle_seed) {
  std::vector<PacHyperParams> grid;
  for (double c : {0.01, 0.1, 1.0})
    for (int epochs : {5, 20}) grid.push_back({c, epochs, shuffle_seed});
  return grid;
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k,
                                                 std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > n)
    fail(ErrorKind::InvalidArgument, "make_folds: need 2 <= k <= n");
  const auto order = seeded_permutation(n, seed);
  const auto folds = static_cast<std::size_t>(k);
  const std::size_t base = n / folds;
  const std::size_t extra = n % folds;
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                  order.begin() + static_cast<std::ptrdiff_t>(cursor + size));
    cursor += size;
  }
  return out;
}

CvResult kfold_cv(std::span<const DocumentRecord> train, const CvConfig& config) {
  config.validate(train.size());
  std::vector<Tokens> tokens;
  std::vector<int> signs;
  tokens.reserve(train.size());
  signs.reserve(train.size());
  for (const auto& doc : train) {
    tokens.push_back(tokenize(doc.text));
    signs.push_back(label_sign(doc.label));
  }

  const auto folds = make_folds(train.size(), config.folds, config.seed);
  const std::size_t k = folds.size();
  CvResult result;
  for (const auto& params : config.grid)
    result.per_candidate.push_back({params, std::vector<double>(k, 0.0), 0.0});

  // The vectorizer depends only on the fold, so it is shared across the grid.
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<Tokens> fit_docs;
    std::vector<int> fit_labels;
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      for (const auto i : folds[g]) {
        fit_docs.push_back(tokens[i]);
        fit_labels.push_back(signs[i]);
      }
    }
    const auto vectorizer = fit_tfidf(fit_docs);
    std::vector<SparseVector> fit_vectors;
    fit_vectors.reserve(fit_docs.size());
    for (const auto& doc : fit_docs) fit_vectors.push_back(transform(vectorizer, doc));
    std::vector<SparseVector> held_out;
    for (const auto i : folds[f]) held_out.push_back(transform(vectorizer, tokens[i]));

    for (auto& candidate : result.per_candidate) {
      const auto model =
          pac_train(fit_vectors, fit_labels, vectorizer.size(), candidate.params);
      std::size_t correct = 0;
      for (std::size_t j = 0; j < held_out.size(); ++j)
        if (pac_predict(model, held_out[j]) == signs[folds[f][j]]) ++correct;
      candidate.fold_accuracies[f] =
          static_cast<double>(correct) / static_cast<double>(held_out.size());
    }
  }

  bool first = true;
  for (auto& candidate : result.per_candidate) {
    double sum = 0.0;
    for (double a : candidate.fold_accuracies) sum += a;
    candidate.mean_accuracy = sum / static_cast<double>(k);
    if (first || candidate.mean_accuracy > result.best_mean_accuracy) {
      result.best = candidate.params;
      result.best_mean_accuracy = candidate.mean_accuracy;
      first = false;
    }
  }
  return result;
}

TrainedClassifier train_classifier(std::span<const DocumentRecord> train,
                                   const PacHyperParams& params) {
  std::vector<Tokens> tokens;
  std::vector<int> signs;
  for (const auto& doc : train) {
    tokens.push_back(tokenize(doc.text));
    signs.push_back(label_sign(doc.label));
  }
  TrainedClassifier out;
  out.vectorizer = fit_tfidf(tokens);
  std::vector<SparseVector> vectors;
  vectors.reserve(tokens.size());
  for (const auto& t : tokens) vectors.push_back(transform(out.vectorizer, t));
  out.model = pac_train(vectors, signs, out.vectorizer.size(), params);
  return out;
}

}  // namespace sfbench
