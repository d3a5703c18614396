#include "sfbench/config.hpp"

#include "sfbench/error.hpp"
#include "strict_json.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sfbench {

using nlohmann::json;
using detail::StrictObject;

namespace {

LinkProfile parse_link(StrictObject obj) {
  LinkWire wire;
  wire.delay_ms = obj.get<double>("delay_ms");
  wire.jitter_ms = obj.get<double>("jitter_ms");
  wire.loss_pct = obj.get<double>("loss_pct");
  wire.bandwidth_mbps = obj.get<double>("bandwidth_mbps");
  wire.mtu_payload = obj.get_or<std::uint32_t>("mtu_payload", 1448);
  obj.finish();
  return link_from_wire(wire);
}

std::vector<PacHyperParams> parse_grid(StrictObject obj) {
  const auto cs = obj.get<std::vector<double>>("C");
  const auto epochs = obj.get<std::vector<int>>("epochs");
  const auto shuffle_seed = obj.get_or<std::uint64_t>("shuffle_seed", 0);
  obj.finish();
  std::vector<PacHyperParams> grid;
  for (double c : cs)
    for (int e : epochs) grid.push_back({c, e, shuffle_seed});
  return grid;
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, std::string("config: invalid JSON: ") + e.what());
  }
  StrictObject obj(root, "", ErrorKind::Config);
  ScenarioConfig cfg;
  cfg.name = obj.get<std::string>("name");

  {
    auto ds = obj.child("dataset");
    const bool syn = ds.has("synthetic");
    const bool csv = ds.has("csv");
    if (syn == csv) fail(ErrorKind::Config, "dataset: exactly one of 'synthetic' or 'csv' required");
    if (syn) {
      auto s = ds.child("synthetic");
      SyntheticSource src;
      src.n_docs = s.get<std::size_t>("n_docs");
      src.vocab_size = s.get<std::size_t>("vocab_size");
      src.noise = s.get<double>("noise");
      src.seed = s.get<std::uint64_t>("seed");
      s.finish();
      cfg.dataset = src;
    } else {
      std::filesystem::path p = ds.get<std::string>("csv");
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.dataset = CsvSource{p.string()};
    }
    ds.finish();
  }

  {
    auto sp = obj.child("split");
    cfg.split.test_fraction = sp.get<double>("test_fraction");
    cfg.split.train_shards = sp.get<std::vector<double>>("train_shards");
    cfg.resplit_per_repetition = sp.get_or<bool>("resplit_per_repetition", false);
    sp.finish();
  }

  const auto& nodes = obj.at("nodes");
  if (!nodes.is_array()) fail(ErrorKind::Config, "nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    StrictObject n(nodes[i], "nodes[" + std::to_string(i) + "]", ErrorKind::Config);
    ComputeNode node;
    node.node_id = n.get<std::string>("id");
    node.link = parse_link(n.child("link"));
    node.compute_scale = n.get_or<double>("compute_scale", 1.0);
    n.finish();
    cfg.nodes.push_back(std::move(node));
  }

  cfg.replica_count = obj.get<std::size_t>("replica_count");
  cfg.concurrency = obj.get<std::size_t>("concurrency");

  cfg.cv.grid = default_grid();
  if (obj.has("cv")) {
    auto cv = obj.child("cv");
    cfg.cv.folds = cv.get_or<int>("folds", 5);
    if (cv.has("grid")) cfg.cv.grid = parse_grid(cv.child("grid"));
    cv.finish();
  }

  cfg.repetitions = obj.get<std::size_t>("repetitions");
  cfg.set_seed(obj.get<std::uint64_t>("seed"));

  if (obj.has("platform")) {
    auto pl = obj.child("platform");
    cfg.platform.overhead_seconds = pl.get_or<double>("overhead_s", 0.0);
    const auto clock = pl.get_or<std::string>("compute_clock", "thread_cpu");
    if (clock == "thread_cpu") {
      cfg.platform.clock = ComputeClock::ThreadCpu;
    } else if (clock == "wall") {
      cfg.platform.clock = ComputeClock::Wall;
    } else {
      fail(ErrorKind::Config, "platform.compute_clock: expected 'thread_cpu' or 'wall'");
    }
    pl.finish();
  }
  obj.finish();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Config, "config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace sfbench
