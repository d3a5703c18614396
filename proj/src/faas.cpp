#include "sfbench/faas.hpp"

#include "sfbench/error.hpp"
#include "sfbench/log.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace sfbench {

Deployment deploy(std::span<const ComputeNode> nodes, std::size_t replica_count,
                  DispatchPolicy policy) {
  if (nodes.empty()) fail(ErrorKind::InvalidArgument, "deploy: no compute nodes");
  if (replica_count < 1) fail(ErrorKind::InvalidArgument, "deploy: replica_count must be >= 1");
  Deployment d;
  d.policy = policy;
  for (std::size_t r = 0; r < replica_count; ++r) {
    const auto node = r % nodes.size();
    d.replicas.push_back({r, node, nodes[node].node_id});
  }
  return d;
}

std::vector<Assignment> dispatch(const Deployment& deployment, std::size_t request_count) {
  if (deployment.replicas.empty())
    fail(ErrorKind::InvalidArgument, "dispatch: deployment has no replicas");
  std::vector<Assignment> out;
  out.reserve(request_count);
  for (std::size_t i = 0; i < request_count; ++i)
    out.push_back({i, i % deployment.replicas.size()});
  return out;
}

InvocationRecord invoke(const ComputeNode& node, std::span<const std::uint8_t> request,
                        Rng& rng, const PlatformOptions& options) {
  InvocationRecord rec;
  rec.node_id = node.node_id;
  rec.request_bytes = request.size();
  rec.compute_scale = node.compute_scale;

  const Bytes response_bytes = handle_training_request(request, options.clock);
  rec.response_bytes = response_bytes.size();
  try {
    auto response = decode_response(response_bytes);
    rec.status = response.status;
    rec.compute_seconds = response.compute_seconds;
    rec.cv_result = std::move(response.result);
    rec.error = std::move(response.error);
  } catch (const Error& e) {
    rec.status = 500;
    rec.error = e.what();
  }
  rec.network_seconds =
      round_trip(node.link, rec.request_bytes, rec.response_bytes, 0.0, rng) +
      options.overhead_seconds;
  rec.total_seconds = rec.network_seconds + rec.compute_seconds * rec.compute_scale;
  return rec;
}

BatchOutcome invoke_all(const Deployment& deployment, std::span<const ComputeNode> nodes,
                        std::span<const Bytes> requests, std::uint64_t seed,
                        const PlatformOptions& options) {
  if (requests.empty()) fail(ErrorKind::InvalidArgument, "invoke_all: no requests");
  for (const auto& r : deployment.replicas)
    if (r.node_index >= nodes.size())
      fail(ErrorKind::InvalidArgument, "invoke_all: replica references unknown node");

  const auto assignments = dispatch(deployment, requests.size());
  std::vector<std::vector<std::size_t>> queues(deployment.replicas.size());
  for (const auto& a : assignments) queues[a.replica_id].push_back(a.request_id);

  BatchOutcome out;
  out.records.resize(requests.size());
  std::vector<std::exception_ptr> failures(queues.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t r = 0; r < queues.size(); ++r) {
      if (queues[r].empty()) continue;
      workers.emplace_back([&, r] {
        try {
          const auto& node = nodes[deployment.replicas[r].node_index];
          for (const auto id : queues[r]) {
            Rng rng(derive_seed(seed, id));
            auto rec = invoke(node, requests[id], rng, options);
            rec.request_id = id;
            rec.replica_id = r;
            out.records[id] = std::move(rec);
          }
        } catch (...) {
          failures[r] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (const auto& queue : queues) {
    double clock = 0.0;
    for (const auto id : queue) clock += out.records[id].total_seconds;
    out.elapsed_seconds = std::max(out.elapsed_seconds, clock);
  }
  for (const auto& rec : out.records)
    if (!rec.ok())
      log::warn("request " + std::to_string(rec.request_id) + " failed with status " +
                std::to_string(rec.status) + ": " + rec.error);
  return out;
}

}  // namespace sfbench
