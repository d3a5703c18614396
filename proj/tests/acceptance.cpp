// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs both bundled scenarios at full size (20 repetitions each).

#include "sfbench/config.hpp"
#include "sfbench/netlink.hpp"
#include "sfbench/payload.hpp"
#include "sfbench/report.hpp"
#include "sfbench/runner.hpp"
#include "sfbench/textml.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace sfbench;

namespace {

const std::filesystem::path kConfigs = SFBENCH_CONFIG_DIR;

int g_failures = 0;

void verdict(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Naive dense PA-I replay following the visiting order reported by the
// implementation.
struct DenseOracle {
  std::vector<double> w;
  double b = 0.0;

  void step(const std::vector<double>& x, double y, double C) {
    double dot = b;
    double sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      dot += w[j] * x[j];
      sq += x[j] * x[j];
    }
    const double loss = std::max(0.0, 1.0 - y * dot);
    if (loss == 0.0) return;
    const double tau = std::min(C, loss / (sq + 1.0));
    for (std::size_t j = 0; j < x.size(); ++j) w[j] += tau * y * x[j];
    b += tau * y;
  }
};

void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("compute_seconds");
    j.erase("elapsed_seconds");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

std::vector<double> accuracies(const ScenarioResult& r) {
  std::vector<double> out;
  for (const auto& rep : r.repetitions) out.push_back(rep.final_accuracy);
  return out;
}

}  // namespace

int main() {
  const auto cfg1 = load_config(kConfigs / "scenario1.json");
  const auto cfg2 = load_config(kConfigs / "scenario2.json");

  const auto t0 = std::chrono::steady_clock::now();
  const auto s1 = run_scenario(cfg1);
  const auto s2 = run_scenario(cfg2);
  const double scenario_seconds = seconds_since(t0);
  const bool all_ok = s1.summary.successful_repetitions == 20 &&
                      s2.summary.successful_repetitions == 20;
  const auto report = compare(s1, s2);

  // 1. Median response-time reduction >= 10 %, runtime <= 10 min.
  verdict(1, "median response-time reduction",
          all_ok && report.median_response_reduction_pct >= 10.0 && scenario_seconds <= 600.0,
          fmt("S1 median %.4f s, S2 median %.4f s, reduction %.1f%%",
              s1.summary.elapsed_seconds.median, s2.summary.elapsed_seconds.median,
              report.median_response_reduction_pct) +
              fmt(" (threshold 10%%), both arms ran in %.1f s", scenario_seconds));

  // 2. Median accuracy parity within 1 pp.
  verdict(2, "median accuracy parity",
          all_ok && std::abs(report.median_accuracy_delta_pp) <= 1.0,
          fmt("S1 %.4f, S2 %.4f, |delta| %.3f pp (threshold 1.0 pp)",
              s1.summary.final_accuracy.median, s2.summary.final_accuracy.median,
              std::abs(report.median_accuracy_delta_pp)));

  // 3. Cloud arm accuracy bit-identical across 20 repetitions.
  {
    const auto acc = accuracies(s2);
    bool same = acc.size() == 20;
    for (double a : acc) same = same && a == acc.front();
    verdict(3, "cloud-arm determinism", same,
            fmt("%.0f repetitions, accuracy %.17g", static_cast<double>(acc.size()), acc.front()));
  }

  // 4. Half payload per edge request.
  {
    const auto ds = load_dataset(cfg1.dataset);
    const auto parts1 = split(ds, cfg1.split);
    const auto parts2 = split(ds, cfg2.split);
    const double cloud_records = static_cast<double>(parts2.shards[0].size());
    const auto cloud_bytes = s2.repetitions[0].records[0].request_bytes;
    bool pass = parts1.shards.size() == 2;
    std::string detail;
    for (std::size_t i = 0; i < parts1.shards.size(); ++i) {
      CvConfig cv = cfg1.cv;
      cv.seed = request_seed(cfg1.seed, i);
      const auto bytes = encode_request(parts1.shards[i], cv).size();
      const auto recorded = s1.repetitions[0].records[i].request_bytes;
      const double records = static_cast<double>(parts1.shards[i].size());
      const double ratio = static_cast<double>(recorded) / static_cast<double>(cloud_bytes);
      pass = pass && bytes == recorded && std::abs(records - cloud_records / 2.0) <= 1.0 &&
             ratio < 0.55;
      detail += fmt("request %.0f: %.0f records, payload ratio %.4f; ", static_cast<double>(i),
                    records, ratio);
    }
    detail += fmt("cloud request %.0f records (limits: half +-1, ratio < 0.55)", cloud_records);
    verdict(4, "half-payload property", pass, detail);
  }

  // 5. PAC oracle equivalence on 50 random 20-doc / 5-term instances.
  {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240501);
    const std::vector<std::string> terms{"alpha", "beta", "gamma", "delta", "omega"};
    double worst_weight = 0.0, worst_margin = 0.0;
    std::size_t unclipped = 0;
    for (int instance = 0; instance < 50; ++instance) {
      std::vector<Tokens> docs;
      std::vector<int> labels;
      for (int d = 0; d < 20; ++d) {
        Tokens t;
        const int len = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < len; ++i) t.push_back(terms[rng() % terms.size()]);
        docs.push_back(t);
        labels.push_back(rng() % 2 ? 1 : -1);
      }
      const auto vec = fit_tfidf(docs);
      std::vector<SparseVector> xs;
      std::vector<std::vector<double>> dense;
      for (const auto& d : docs) {
        xs.push_back(transform(vec, d));
        std::vector<double> row(vec.size(), 0.0);
        for (const auto& e : xs.back().entries) row[e.index] = e.weight;
        dense.push_back(row);
      }
      const PacHyperParams hp{0.05 + static_cast<double>(rng() % 200) / 100.0,
                              1 + static_cast<int>(rng() % 5), rng()};
      DenseOracle oracle{std::vector<double>(vec.size(), 0.0), 0.0};
      const auto model = pac_train(xs, labels, vec.size(), hp, [&](const PacStep& s) {
        oracle.step(dense[s.example], labels[s.example], hp.C);
        if (s.tau > 0.0 && s.tau < hp.C) {
          ++unclipped;
          worst_margin = std::max(worst_margin, std::abs(s.margin_after - 1.0));
        }
      });
      for (std::size_t j = 0; j < vec.size(); ++j)
        worst_weight = std::max(worst_weight, std::abs(model.weights[j] - oracle.w[j]));
      worst_weight = std::max(worst_weight, std::abs(model.bias - oracle.b));
    }
    const double secs = seconds_since(start);
    verdict(5, "PAC oracle equivalence",
            worst_weight <= 1e-9 && worst_margin <= 1e-9 && unclipped > 0 && secs < 5.0,
            fmt("max |w - oracle| %.3g, max |margin - 1| %.3g (tol 1e-9)", worst_weight,
                worst_margin) +
                fmt(" over %.0f unclipped updates, %.3f s", static_cast<double>(unclipped), secs));
  }

  // 6. TF-IDF oracle values and norms.
  {
    const std::vector<Tokens> toy{{"a", "b"}, {"a", "c"}};
    const auto v = transform(fit_tfidf(toy), {"a", "b"});
    const bool toy_ok = v.entries.size() == 2 && std::abs(v.entries[0].weight - 0.5799) <= 1e-3 &&
                        std::abs(v.entries[1].weight - 0.8147) <= 1e-3;
    std::mt19937_64 rng(6);
    std::vector<Tokens> corpus;
    for (int d = 0; d < 200; ++d) {
      Tokens t;
      for (int i = 0; i < 1 + static_cast<int>(rng() % 12); ++i)
        t.push_back("w" + std::to_string(rng() % 50));
      corpus.push_back(t);
    }
    const auto model = fit_tfidf(corpus);
    std::size_t bad = 0, zeros = 0;
    for (int d = 0; d < 1000; ++d) {
      Tokens t;
      for (int i = 0; i < static_cast<int>(rng() % 10); ++i)
        t.push_back("w" + std::to_string(rng() % 80));  // some out of vocabulary
      const double n = transform(model, t).norm();
      if (n == 0.0) {
        ++zeros;
      } else if (std::abs(n - 1.0) > 1e-9) {
        ++bad;
      }
    }
    verdict(6, "TF-IDF oracle", toy_ok && bad == 0,
            fmt("toy weights (%.4f, %.4f); ", v.entries[0].weight, v.entries[1].weight) +
                fmt("1000 random docs: %.0f zero vectors, %.0f off-unit norms",
                    static_cast<double>(zeros), static_cast<double>(bad)));
  }

  // 7. k-fold partitions.
  {
    std::mt19937_64 rng(7);
    std::size_t bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + rng() % 499;
      const int k = 2 + static_cast<int>(rng() % (n - 1));
      const auto folds = make_folds(n, k, rng());
      std::set<std::size_t> seen;
      std::size_t lo = n, hi = 0, total = 0;
      for (const auto& f : folds) {
        lo = std::min(lo, f.size());
        hi = std::max(hi, f.size());
        total += f.size();
        seen.insert(f.begin(), f.end());
      }
      const bool ok = folds.size() == static_cast<std::size_t>(k) && total == n &&
                      seen.size() == n && *seen.rbegin() == n - 1 && hi - lo <= 1;
      bad += !ok;
    }
    verdict(7, "k-fold partition properties", bad == 0,
            fmt("200 random (n, k) pairs, %.0f violations", static_cast<double>(bad)));
  }

  // 8. Netlink statistics.
  {
    LinkProfile clean;
    clean.delay_mean = 0.010;
    clean.bandwidth = 1'448'000.0;
    Rng rng(8);
    const auto t = transfer_time(clean, 14'480, rng);
    const bool closed = t.duration == clean.delay_mean + 10.0 * (1448.0 / clean.bandwidth) &&
                        t.packets_sent == 10;

    const auto cloud = link_from_wire({15, 3, 0.24, 200, 1448});
    const std::uint64_t packets = 100'000;
    const auto lossy = transfer_time(cloud, packets * 1448, rng);
    const double p = cloud.loss_rate;
    const double mean_tx = static_cast<double>(lossy.packets_sent) / static_cast<double>(packets);
    const double se = std::sqrt(p) / (1.0 - p) / std::sqrt(static_cast<double>(packets));
    const double tx_dev = std::abs(mean_tx - 1.0 / (1.0 - p)) / se;

    const auto edge = link_from_wire({1.25, 0.25, 0.02, 1000, 1448});
    const int n = 100'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_delay(edge, rng);
    const double delay_dev = std::abs(sum / n - 0.00125) / (0.00025 / std::sqrt(n));

    verdict(8, "netlink statistics", closed && tx_dev <= 3.0 && delay_dev <= 3.0,
            std::string(closed ? "closed form exact; " : "closed form MISMATCH; ") +
                fmt("transmissions/packet %.6f (%.2f SE); delay mean %.3f sigma/sqrt(n) off",
                    mean_tx, tx_dev, delay_dev));
  }

  // 9. End-to-end determinism: rerun both arms and diff the result JSON.
  {
    const auto s1b = run_scenario(cfg1);
    const auto s2b = run_scenario(cfg2);
    auto diff = [](const ScenarioResult& a, const ScenarioResult& b) {
      auto ja = nlohmann::json::parse(result_to_json(a));
      auto jb = nlohmann::json::parse(result_to_json(b));
      strip_timing(ja);
      strip_timing(jb);
      return ja == jb;
    };
    const bool same1 = diff(s1, s1b);
    const bool same2 = diff(s2, s2b);
    verdict(9, "end-to-end determinism", same1 && same2,
            std::string("scenario1 ") + (same1 ? "identical" : "DIFFERS") + ", scenario2 " +
                (same2 ? "identical" : "DIFFERS") + " (ignoring compute_seconds/elapsed_seconds)");
  }

  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
