#include "sfbench/error.hpp"
#include "sfbench/netlink.hpp"

#include <doctest.h>

#include <cmath>

using namespace sfbench;

namespace {

LinkProfile clean(double delay, double bandwidth) {
  LinkProfile l;
  l.delay_mean = delay;
  l.bandwidth = bandwidth;
  return l;
}

}  // namespace

TEST_CASE("sample_delay") {
  Rng rng(1);
  LinkProfile fixed = clean(0.015, 1e6);
  CHECK(sample_delay(fixed, rng) == 0.015);

  SUBCASE("truncated at zero") {
    LinkProfile l = clean(0.0, 1e6);
    l.jitter = 0.001;
    for (int i = 0; i < 10000; ++i) CHECK(sample_delay(l, rng) >= 0.0);
  }
  SUBCASE("mean of the edge profile") {
    const auto l = link_from_wire({1.25, 0.25, 0.02, 1000, 1448});
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += sample_delay(l, rng);
    CHECK(std::abs(sum / n - 0.00125) <= 3 * 0.00025 / std::sqrt(n));
  }
}

TEST_CASE("transfer_time closed form at zero loss and jitter") {
  Rng rng(2);
  const auto l = clean(0.010, 1'448'000.0);
  const auto t = transfer_time(l, 14'480, rng);
  CHECK(t.packets_sent == 10);
  CHECK(t.packets_lost == 0);
  CHECK(t.duration == 0.010 + 10.0 * (1448.0 / 1'448'000.0));
  CHECK(t.duration == doctest::Approx(0.020).epsilon(1e-12));

  const auto empty = transfer_time(l, 0, rng);
  CHECK(empty.packets_sent == 1);
  CHECK(empty.duration == 0.010 + 1448.0 / 1'448'000.0);

  CHECK(packet_count(l, 1448) == 1);
  CHECK(packet_count(l, 1449) == 2);
}

TEST_CASE("transfer_time accounting and monotonicity") {
  const auto l = link_from_wire({15, 3, 5.0, 200, 1448});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    double previous = -1.0;
    // 1, 2, 4, 35 and 346 packets
    for (std::uint64_t bytes : {1448ULL, 1449ULL, 5000ULL, 50'000ULL, 500'000ULL}) {
      Rng rng(seed);
      const auto t = transfer_time(l, bytes, rng);
      CHECK(t.packets_sent == packet_count(l, bytes) + t.packets_lost);
      CHECK(t.duration >= 0.0);
      CHECK(t.duration > previous);
      previous = t.duration;
    }
  }
}

TEST_CASE("transfer_time loss statistics") {
  const auto l = link_from_wire({15, 3, 0.24, 200, 1448});
  Rng rng(3);
  const std::uint64_t packets = 100'000;
  const auto t = transfer_time(l, packets * 1448, rng);
  const double p = 0.0024;
  const double mean_tx = static_cast<double>(t.packets_sent) / packets;
  const double se = std::sqrt(p) / (1.0 - p) / std::sqrt(static_cast<double>(packets));
  CHECK(std::abs(mean_tx - 1.0 / (1.0 - p)) <= 3 * se);
}

TEST_CASE("transfer_time is reproducible") {
  const auto l = link_from_wire({15, 3, 0.24, 200, 1448});
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const auto x = transfer_time(l, 10'000 + i * 997, a);
    const auto y = transfer_time(l, 10'000 + i * 997, b);
    CHECK(x.duration == y.duration);
    CHECK(x.packets_sent == y.packets_sent);
  }
}

TEST_CASE("round_trip") {
  const auto l = clean(0.002, 1'448'000.0);
  Rng rng(4);
  CHECK(round_trip(l, 2896, 1448, 1.0, rng) ==
        (0.002 + 2 * (1448.0 / 1'448'000.0)) + 1.0 + (0.002 + 1448.0 / 1'448'000.0));
  CHECK(round_trip(l, 0, 0, 0.0, rng) == doctest::Approx(2 * (0.002 + 0.001)));
  CHECK_THROWS_AS(round_trip(l, 0, 0, -1.0, rng), Error);

  const auto lossy = link_from_wire({15, 3, 2.0, 200, 1448});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    double previous = 0.0;
    for (std::uint64_t bytes = 0; bytes < 200'000; bytes += 20'000) {
      Rng replay(seed);
      const double t = round_trip(lossy, bytes, 900, 0.5, replay);
      CHECK(t >= previous);
      previous = t;
    }
  }
}

TEST_CASE("link validation and wire units") {
  const auto l = link_from_wire({1.25, 0.25, 0.02, 1000, 1448});
  CHECK(l.delay_mean == doctest::Approx(0.00125));
  CHECK(l.jitter == doctest::Approx(0.00025));
  CHECK(l.loss_rate == doctest::Approx(0.0002));
  CHECK(l.bandwidth == doctest::Approx(125e6));
  CHECK_NOTHROW(l.validate());

  LinkProfile bad = l;
  bad.loss_rate = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = l;
  bad.bandwidth = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = l;
  bad.jitter = -1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = l;
  bad.mtu_payload = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}
