#include "sfbench/log.hpp"
#include "sfbench/rng.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <numeric>
#include <string>

namespace sfbench {

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  seeded_shuffle(order, rng);
  return order;
}

namespace log {
namespace {

Level level_from_env() {
  const char* env = std::getenv("SFBENCH_LOG");
  if (env == nullptr) return Level::Warn;
  const std::string v(env);
  if (v == "error") return Level::Error;
  if (v == "info") return Level::Info;
  if (v == "debug") return Level::Debug;
  return Level::Warn;
}

std::atomic<int>& threshold_storage() {
  static std::atomic<int> value{static_cast<int>(level_from_env())};
  return value;
}

constexpr const char* kNames[] = {"error", "warn", "info", "debug"};

}  // namespace

Level threshold() { return static_cast<Level>(threshold_storage().load()); }

void set_threshold(Level level) {
  threshold_storage().store(static_cast<int>(level));
}

void write(Level level, std::string_view message) {
  if (static_cast<int>(level) > threshold_storage().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[sfbench " << kNames[static_cast<int>(level)] << "] "
            << message << '\n';
}

}  // namespace log
}  // namespace sfbench
