#pragma once

#include "sfbench/corpus.hpp"
#include "sfbench/textml.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sfbench {

using Bytes = std::vector<std::uint8_t>;

// Wire form of one training job sent to a function replica.
struct TrainingRequest {
  std::vector<std::string> docs;
  std::vector<Label> labels;
  CvConfig cv;

  std::vector<DocumentRecord> records() const;
  bool operator==(const TrainingRequest&) const = default;
};

TrainingRequest make_request(std::span<const DocumentRecord> shard,
                             const CvConfig& cv);

// Canonical JSON (sorted keys, no whitespace):
// {"docs":[..],"folds":k,"grid":{"candidates":[..]},"labels":[..],"seed":s}
Bytes encode_request(const TrainingRequest& request);
Bytes encode_request(std::span<const DocumentRecord> shard, const CvConfig& cv);
TrainingRequest decode_request(std::span<const std::uint8_t> bytes);

struct TrainingResponse {
  int status = 200;
  std::optional<CvResult> result;
  double compute_seconds = 0.0;
  std::string error;

  bool ok() const noexcept { return status == 200 && result.has_value(); }
};

// compute_seconds is written in fixed-width scientific notation so the
// response size does not depend on the measured value.
Bytes encode_response(const TrainingResponse& response);
TrainingResponse decode_response(std::span<const std::uint8_t> bytes);

enum class ComputeClock {
  // CPU time of the handler thread: what a dedicated node would spend.
  ThreadCpu,
  Wall,
};

// The function entry point. Never throws: malformed input produces a 400
// response, precondition failures a 422, anything else a 500.
Bytes handle_training_request(std::span<const std::uint8_t> request,
                              ComputeClock clock = ComputeClock::ThreadCpu);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace sfbench
