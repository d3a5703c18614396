#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sfbench {

enum class Label { Real, Fake };

std::string_view label_name(Label label) noexcept;
// Case-insensitive "REAL"/"FAKE"; throws Error(Parse) otherwise.
Label parse_label(std::string_view text);
// REAL maps to +1, FAKE to -1.
inline int label_sign(Label label) noexcept {
  return label == Label::Real ? 1 : -1;
}

struct DocumentRecord {
  std::size_t id = 0;
  std::string text;
  Label label = Label::Real;

  bool operator==(const DocumentRecord&) const = default;
};

struct Dataset {
  std::vector<DocumentRecord> records;
  std::string source;

  std::size_t size() const noexcept { return records.size(); }
  bool operator==(const Dataset&) const = default;
};

struct SplitSpec {
  double test_fraction = 0.2;
  std::vector<double> train_shards{0.8};
  std::uint64_t seed = 0;

  // Throws Error(InvalidArgument) when fractions are out of range.
  void validate() const;
  bool operator==(const SplitSpec&) const = default;
};

struct SplitResult {
  std::vector<DocumentRecord> test;
  std::vector<std::vector<DocumentRecord>> shards;

  // Union of all shards, in shard order.
  std::vector<DocumentRecord> training_union() const;
};

// Reads a CSV with a header row containing `text` and `label` columns. Rows
// whose text yields no tokens are skipped; ids are re-assigned densely.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::string_view content, std::string source = "memory");

// Two disjoint word pools (one per class); each document draws 10-50 words
// from its own pool, swapping each word for one from the other pool with
// probability `noise`. Even ids are REAL, odd ids are FAKE.
Dataset generate_synthetic(std::size_t n_docs, std::size_t vocab_size,
                           double noise, std::uint64_t seed);

// Seeded permutation, then test first and shards in order. Sizes use
// floor(fraction * n); when the fractions sum to 1 the last shard absorbs the
// rounding remainder.
SplitResult split(const Dataset& dataset, const SplitSpec& spec);

}  // namespace sfbench
