#include "sfbench/corpus.hpp"

#include "sfbench/error.hpp"
#include "sfbench/log.hpp"
#include "sfbench/rng.hpp"
#include "sfbench/textml.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace sfbench {

namespace {

constexpr double kFractionSlack = 1e-9;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// RFC 4180 style: quoted fields may hold commas, newlines and "" escapes.
std::vector<std::vector<std::string>> parse_csv_rows(std::string_view in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const char c = in[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < in.size() && in[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        any = false;
        break;
      default:
        field.push_back(c);
        any = true;
    }
  }
  if (quoted) fail(ErrorKind::Parse, "csv: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Pronounceable, distinct, alphanumeric pseudo-words.
std::string make_word(std::size_t index, std::size_t digits) {
  static constexpr const char* kSyllables[] = {
      "ba", "ce", "di", "fo", "gu", "ha", "je", "ki", "lo", "mu",
      "na", "pe", "ri", "so", "tu", "va", "we", "xi", "yo", "zu"};
  constexpr std::size_t kBase = std::size(kSyllables);
  std::string word;
  for (std::size_t d = 0; d < digits; ++d) {
    word.insert(0, kSyllables[index % kBase]);
    index /= kBase;
  }
  return word;
}

std::size_t part_size(double fraction, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + kFractionSlack));
}

}  // namespace

std::string_view label_name(Label label) noexcept {
  return label == Label::Real ? "REAL" : "FAKE";
}

Label parse_label(std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "real") return Label::Real;
  if (v == "fake") return Label::Fake;
  fail(ErrorKind::Parse, "unknown label '" + std::string(text) + "'");
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    fail(ErrorKind::InvalidArgument, "split: test_fraction must be in (0,1)");
  if (train_shards.empty())
    fail(ErrorKind::InvalidArgument, "split: train_shards must be non-empty");
  double total = test_fraction;
  for (double f : train_shards) {
    if (!(f > 0.0 && f < 1.0))
      fail(ErrorKind::InvalidArgument,
           "split: every train shard fraction must be in (0,1)");
    total += f;
  }
  if (total > 1.0 + kFractionSlack)
    fail(ErrorKind::InvalidArgument, "split: fractions sum to more than 1");
}

std::vector<DocumentRecord> SplitResult::training_union() const {
  std::vector<DocumentRecord> out;
  for (const auto& shard : shards) out.insert(out.end(), shard.begin(), shard.end());
  return out;
}

Dataset parse_csv(std::string_view content, std::string source) {
  const auto rows = parse_csv_rows(content);
  if (rows.empty()) fail(ErrorKind::Parse, source + ": missing header row");

  const auto& header = rows.front();
  std::optional<std::size_t> text_col;
  std::optional<std::size_t> label_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto name = lower(trim(header[c]));
    // Tolerate a UTF-8 byte order mark on the first column.
    if (c == 0 && name.rfind("\xef\xbb\xbf", 0) == 0) name.erase(0, 3);
    if (name == "text" && !text_col) text_col = c;
    if (name == "label" && !label_col) label_col = c;
  }
  if (!text_col) fail(ErrorKind::Parse, source + ": missing required column 'text'");
  if (!label_col) fail(ErrorKind::Parse, source + ": missing required column 'label'");

  Dataset ds;
  ds.source = std::move(source);
  std::size_t skipped = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto need = std::max(*text_col, *label_col);
    if (row.size() <= need)
      fail(ErrorKind::Parse, ds.source + ": row " + std::to_string(r) +
                                 " has " + std::to_string(row.size()) +
                                 " fields");
    Label label;
    try {
      label = parse_label(row[*label_col]);
    } catch (const Error& e) {
      fail(ErrorKind::Parse,
           ds.source + ": row " + std::to_string(r) + ": " + e.what());
    }
    if (tokenize(row[*text_col]).empty()) {
      ++skipped;
      continue;
    }
    ds.records.push_back({ds.records.size(), row[*text_col], label});
  }
  if (skipped > 0)
    log::warn(ds.source + ": skipped " + std::to_string(skipped) +
              " rows without usable tokens");
  if (ds.records.empty()) fail(ErrorKind::Parse, ds.source + ": no usable rows");
  return ds;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

Dataset generate_synthetic(std::size_t n_docs, std::size_t vocab_size,
                           double noise, std::uint64_t seed) {
  if (n_docs < 2) fail(ErrorKind::InvalidArgument, "synthetic: n_docs must be >= 2");
  if (vocab_size < 4)
    fail(ErrorKind::InvalidArgument, "synthetic: vocab_size must be >= 4");
  if (!(noise >= 0.0 && noise < 1.0))
    fail(ErrorKind::InvalidArgument, "synthetic: noise must be in [0,1)");

  std::size_t digits = 2;
  for (std::size_t cap = 400; cap < vocab_size; cap *= 20) ++digits;

  // Pool 0 (REAL) holds the first half of the vocabulary, pool 1 the rest.
  const std::size_t half = vocab_size / 2;
  std::vector<std::string> pools[2];
  for (std::size_t w = 0; w < vocab_size; ++w)
    pools[w < half ? 0 : 1].push_back(make_word(w, digits));

  Rng rng(seed);
  std::uniform_int_distribution<int> length(10, 50);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Dataset ds;
  ds.source = "synthetic:" + std::to_string(seed);
  ds.records.reserve(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    const int cls = static_cast<int>(i % 2);
    const int words = length(rng);
    std::string text;
    for (int w = 0; w < words; ++w) {
      const bool swap = noise > 0.0 && coin(rng) < noise;
      const auto& pool = pools[swap ? 1 - cls : cls];
      const auto pick = static_cast<std::size_t>(rng() % pool.size());
      if (!text.empty()) text.push_back(' ');
      text += pool[pick];
    }
    ds.records.push_back({i, std::move(text), cls == 0 ? Label::Real : Label::Fake});
  }
  return ds;
}

SplitResult split(const Dataset& dataset, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = dataset.size();
  if (n < spec.train_shards.size() + 1)
    fail(ErrorKind::InvalidArgument, "split: dataset smaller than number of parts");

  double total = spec.test_fraction;
  for (double f : spec.train_shards) total += f;
  const bool covers_all = std::abs(total - 1.0) <= kFractionSlack;

  std::vector<std::size_t> sizes;
  sizes.push_back(part_size(spec.test_fraction, n));
  std::size_t assigned = sizes.front();
  for (std::size_t s = 0; s < spec.train_shards.size(); ++s) {
    std::size_t size = part_size(spec.train_shards[s], n);
    if (covers_all && s + 1 == spec.train_shards.size()) size = n - assigned;
    sizes.push_back(size);
    assigned += size;
  }
  if (assigned > n) fail(ErrorKind::InvalidArgument, "split: parts exceed dataset");
  for (std::size_t p = 0; p < sizes.size(); ++p)
    if (sizes[p] == 0)
      fail(ErrorKind::InvalidArgument,
           p == 0 ? std::string("split: test partition is empty")
                  : "split: train shard " + std::to_string(p - 1) + " is empty");

  const auto order = seeded_permutation(n, spec.seed);
  SplitResult out;
  std::size_t cursor = 0;
  auto take = [&](std::size_t count) {
    std::vector<DocumentRecord> part;
    part.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      part.push_back(dataset.records[order[cursor++]]);
    return part;
  };
  out.test = take(sizes.front());
  for (std::size_t p = 1; p < sizes.size(); ++p) out.shards.push_back(take(sizes[p]));
  return out;
}

}  // namespace sfbench
