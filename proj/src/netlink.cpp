#include "sfbench/netlink.hpp"

#include "sfbench/error.hpp"

#include <cmath>
#include <random>

namespace sfbench {

void LinkProfile::validate() const {
  if (!(delay_mean >= 0.0) || !std::isfinite(delay_mean))
    fail(ErrorKind::InvalidArgument, "link: delay must be >= 0");
  if (!(jitter >= 0.0) || !std::isfinite(jitter))
    fail(ErrorKind::InvalidArgument, "link: jitter must be >= 0");
  if (!(loss_rate >= 0.0 && loss_rate < 1.0))
    fail(ErrorKind::InvalidArgument, "link: loss rate must be in [0,1)");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    fail(ErrorKind::InvalidArgument, "link: bandwidth must be > 0");
  if (mtu_payload == 0) fail(ErrorKind::InvalidArgument, "link: mtu_payload must be > 0");
}

LinkProfile link_from_wire(const LinkWire& wire) {
  LinkProfile link;
  link.delay_mean = wire.delay_ms / 1000.0;
  link.jitter = wire.jitter_ms / 1000.0;
  link.loss_rate = wire.loss_pct / 100.0;
  link.bandwidth = wire.bandwidth_mbps * 1e6 / 8.0;
  link.mtu_payload = wire.mtu_payload;
  return link;
}

LinkWire link_to_wire(const LinkProfile& link) {
  return {link.delay_mean * 1000.0, link.jitter * 1000.0, link.loss_rate * 100.0,
          link.bandwidth * 8.0 / 1e6, link.mtu_payload};
}

std::uint64_t packet_count(const LinkProfile& link, std::uint64_t payload_bytes) noexcept {
  const std::uint64_t mtu = link.mtu_payload;
  const std::uint64_t n = (payload_bytes + mtu - 1) / mtu;
  return n == 0 ? 1 : n;
}

double sample_delay(const LinkProfile& link, Rng& rng) {
  if (link.jitter == 0.0) return link.delay_mean;
  std::normal_distribution<double> normal(link.delay_mean, link.jitter);
  for (;;) {
    const double d = normal(rng);
    if (d >= 0.0) return d;
  }
}

TransferOutcome transfer_time(const LinkProfile& link, std::uint64_t payload_bytes,
                              Rng& rng) {
  TransferOutcome out;
  const std::uint64_t packets = packet_count(link, payload_bytes);
  const double one_way = sample_delay(link, rng);
  double loss_penalty = 0.0;
  if (link.loss_rate > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::uint64_t p = 0; p < packets; ++p) {
      while (coin(rng) < link.loss_rate) {
        ++out.packets_lost;
        loss_penalty += 2.0 * sample_delay(link, rng);
      }
    }
  }
  out.packets_sent = packets + out.packets_lost;
  const double per_packet = static_cast<double>(link.mtu_payload) / link.bandwidth;
  out.duration = one_way + static_cast<double>(out.packets_sent) * per_packet;
  if (out.packets_lost > 0) out.duration += loss_penalty;
  return out;
}

double round_trip(const LinkProfile& link, std::uint64_t request_bytes,
                  std::uint64_t response_bytes, double compute_seconds, Rng& rng) {
  if (!(compute_seconds >= 0.0))
    fail(ErrorKind::InvalidArgument, "round_trip: compute_seconds must be >= 0");
  Rng up(rng());
  Rng down(rng());
  const auto request = transfer_time(link, request_bytes, up);
  const auto response = transfer_time(link, response_bytes, down);
  return request.duration + compute_seconds + response.duration;
}

}  // namespace sfbench
