#pragma once

#include "sfbench/rng.hpp"

#include <cstdint>

namespace sfbench {

// One emulated link. Times in seconds, bandwidth in bytes/second.
struct LinkProfile {
  double delay_mean = 0.0;
  double jitter = 0.0;  // standard deviation of the one-way delay
  double loss_rate = 0.0;
  double bandwidth = 125'000'000.0;
  std::uint32_t mtu_payload = 1448;

  void validate() const;
  bool operator==(const LinkProfile&) const = default;
};

// Wire units used by scenario configs: milliseconds, percent, Mbit/s.
struct LinkWire {
  double delay_ms = 0.0;
  double jitter_ms = 0.0;
  double loss_pct = 0.0;
  double bandwidth_mbps = 1000.0;
  std::uint32_t mtu_payload = 1448;
};
LinkProfile link_from_wire(const LinkWire& wire);
LinkWire link_to_wire(const LinkProfile& link);

struct TransferOutcome {
  double duration = 0.0;
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_lost = 0;
};

std::uint64_t packet_count(const LinkProfile& link, std::uint64_t payload_bytes) noexcept;

// Normal(delay_mean, jitter) truncated below at zero by rejection. With zero
// jitter the mean is returned without touching the stream.
double sample_delay(const LinkProfile& link, Rng& rng);

// One-way delay, plus serialization of every transmission, plus one sampled
// RTT per lost packet. Lost packets are retransmitted until delivered.
TransferOutcome transfer_time(const LinkProfile& link, std::uint64_t payload_bytes,
                              Rng& rng);

// Request and response transfers draw from two child streams seeded from
// `rng`, so a larger request never perturbs the response sample.
double round_trip(const LinkProfile& link, std::uint64_t request_bytes,
                  std::uint64_t response_bytes, double compute_seconds, Rng& rng);

}  // namespace sfbench
