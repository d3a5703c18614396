#pragma once

#include "sfbench/netlink.hpp"
#include "sfbench/payload.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sfbench {

struct ComputeNode {
  std::string node_id;
  LinkProfile link;  // base station -> node
  double compute_scale = 1.0;

  bool operator==(const ComputeNode&) const = default;
};

enum class DispatchPolicy { RoundRobin };

struct Replica {
  std::size_t replica_id = 0;
  std::size_t node_index = 0;
  std::string node_id;

  bool operator==(const Replica&) const = default;
};

struct Deployment {
  std::vector<Replica> replicas;
  DispatchPolicy policy = DispatchPolicy::RoundRobin;
};

struct PlatformOptions {
  // Fixed per-invocation platform cost, counted as non-compute time.
  double overhead_seconds = 0.0;
  ComputeClock clock = ComputeClock::ThreadCpu;

  bool operator==(const PlatformOptions&) const = default;
};

struct InvocationRecord {
  std::size_t request_id = 0;
  std::size_t replica_id = 0;
  std::string node_id;
  std::uint64_t request_bytes = 0;
  std::uint64_t response_bytes = 0;
  double compute_seconds = 0.0;
  double compute_scale = 1.0;
  double network_seconds = 0.0;
  double total_seconds = 0.0;  // network + compute * scale
  int status = 200;
  std::optional<CvResult> cv_result;
  std::string error;

  bool ok() const noexcept { return status == 200 && cv_result.has_value(); }
  bool operator==(const InvocationRecord&) const = default;
};

// Replica i lands on node i mod |nodes|.
Deployment deploy(std::span<const ComputeNode> nodes, std::size_t replica_count,
                  DispatchPolicy policy = DispatchPolicy::RoundRobin);

struct Assignment {
  std::size_t request_id = 0;
  std::size_t replica_id = 0;

  bool operator==(const Assignment&) const = default;
};

std::vector<Assignment> dispatch(const Deployment& deployment, std::size_t request_count);

// Runs the training handler for real and simulates both transfers over
// node.link. Handler failures are carried in the record, never thrown.
InvocationRecord invoke(const ComputeNode& node, std::span<const std::uint8_t> request,
                        Rng& rng, const PlatformOptions& options = {});

struct BatchOutcome {
  double elapsed_seconds = 0.0;
  std::vector<InvocationRecord> records;  // request order
};

// One worker thread per replica; a replica serves its queue FIFO. Elapsed
// time assumes every request left the base station at t=0, so it is the
// latest completion over per-replica serialized timelines. Request i draws
// network samples from a stream derived from (seed, i).
BatchOutcome invoke_all(const Deployment& deployment, std::span<const ComputeNode> nodes,
                        std::span<const Bytes> requests, std::uint64_t seed,
                        const PlatformOptions& options = {});

}  // namespace sfbench
