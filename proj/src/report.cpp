#include "sfbench/report.hpp"

#include "sfbench/error.hpp"
#include "strict_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sfbench {

using nlohmann::json;
using detail::StrictObject;

namespace {

constexpr ErrorKind kParse = ErrorKind::Parse;

json params_json(const PacHyperParams& p) {
  return {{"C", p.C}, {"epochs", p.epochs}, {"shuffle_seed", p.shuffle_seed}};
}

PacHyperParams params_from(StrictObject o) {
  PacHyperParams p;
  p.C = o.get<double>("C");
  p.epochs = o.get<int>("epochs");
  p.shuffle_seed = o.get<std::uint64_t>("shuffle_seed");
  o.finish();
  return p;
}

json link_json(const LinkProfile& l) {
  return {{"delay_s", l.delay_mean},
          {"jitter_s", l.jitter},
          {"loss_rate", l.loss_rate},
          {"bandwidth_Bps", l.bandwidth},
          {"mtu_payload", l.mtu_payload}};
}

LinkProfile link_from(StrictObject o) {
  LinkProfile l;
  l.delay_mean = o.get<double>("delay_s");
  l.jitter = o.get<double>("jitter_s");
  l.loss_rate = o.get<double>("loss_rate");
  l.bandwidth = o.get<double>("bandwidth_Bps");
  l.mtu_payload = o.get<std::uint32_t>("mtu_payload");
  o.finish();
  return l;
}

json config_json(const ScenarioConfig& c) {
  json dataset;
  if (const auto* syn = std::get_if<SyntheticSource>(&c.dataset)) {
    dataset["synthetic"] = {{"n_docs", syn->n_docs},
                            {"vocab_size", syn->vocab_size},
                            {"noise", syn->noise},
                            {"seed", syn->seed}};
  } else {
    dataset["csv"] = std::get<CsvSource>(c.dataset).path;
  }
  json nodes = json::array();
  for (const auto& n : c.nodes)
    nodes.push_back(
        {{"id", n.node_id}, {"link", link_json(n.link)}, {"compute_scale", n.compute_scale}});
  json grid = json::array();
  for (const auto& p : c.cv.grid) grid.push_back(params_json(p));
  return {{"name", c.name},
          {"dataset", std::move(dataset)},
          {"split",
           {{"test_fraction", c.split.test_fraction},
            {"train_shards", c.split.train_shards},
            {"seed", c.split.seed},
            {"resplit_per_repetition", c.resplit_per_repetition}}},
          {"nodes", std::move(nodes)},
          {"replica_count", c.replica_count},
          {"concurrency", c.concurrency},
          {"cv", {{"folds", c.cv.folds}, {"grid", std::move(grid)}, {"seed", c.cv.seed}}},
          {"repetitions", c.repetitions},
          {"seed", c.seed},
          {"platform",
           {{"overhead_s", c.platform.overhead_seconds},
            {"compute_clock",
             c.platform.clock == ComputeClock::Wall ? "wall" : "thread_cpu"}}}};
}

ScenarioConfig config_from(StrictObject o) {
  ScenarioConfig c;
  c.name = o.get<std::string>("name");
  {
    auto ds = o.child("dataset");
    if (ds.has("synthetic")) {
      auto s = ds.child("synthetic");
      c.dataset = SyntheticSource{s.get<std::size_t>("n_docs"), s.get<std::size_t>("vocab_size"),
                                  s.get<double>("noise"), s.get<std::uint64_t>("seed")};
      s.finish();
    } else {
      c.dataset = CsvSource{ds.get<std::string>("csv")};
    }
    ds.finish();
  }
  {
    auto sp = o.child("split");
    c.split.test_fraction = sp.get<double>("test_fraction");
    c.split.train_shards = sp.get<std::vector<double>>("train_shards");
    c.split.seed = sp.get<std::uint64_t>("seed");
    c.resplit_per_repetition = sp.get<bool>("resplit_per_repetition");
    sp.finish();
  }
  const auto& nodes = o.at("nodes");
  if (!nodes.is_array()) fail(kParse, "config.nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    StrictObject n(nodes[i], "config.nodes[" + std::to_string(i) + "]", kParse);
    ComputeNode node;
    node.node_id = n.get<std::string>("id");
    node.link = link_from(n.child("link"));
    node.compute_scale = n.get<double>("compute_scale");
    n.finish();
    c.nodes.push_back(std::move(node));
  }
  c.replica_count = o.get<std::size_t>("replica_count");
  c.concurrency = o.get<std::size_t>("concurrency");
  {
    auto cv = o.child("cv");
    c.cv.folds = cv.get<int>("folds");
    c.cv.seed = cv.get<std::uint64_t>("seed");
    const auto& grid = cv.at("grid");
    if (!grid.is_array()) fail(kParse, "config.cv.grid: expected an array");
    for (std::size_t i = 0; i < grid.size(); ++i)
      c.cv.grid.push_back(
          params_from(StrictObject(grid[i], "config.cv.grid[" + std::to_string(i) + "]", kParse)));
    cv.finish();
  }
  c.repetitions = o.get<std::size_t>("repetitions");
  c.seed = o.get<std::uint64_t>("seed");
  {
    auto pl = o.child("platform");
    c.platform.overhead_seconds = pl.get<double>("overhead_s");
    c.platform.clock =
        pl.get<std::string>("compute_clock") == "wall" ? ComputeClock::Wall : ComputeClock::ThreadCpu;
    pl.finish();
  }
  o.finish();
  return c;
}

json cv_json(const CvResult& r) {
  json per = json::array();
  for (const auto& c : r.per_candidate)
    per.push_back({{"params", params_json(c.params)},
                   {"fold_accuracies", c.fold_accuracies},
                   {"mean_accuracy", c.mean_accuracy}});
  return {{"best", params_json(r.best)},
          {"best_mean_accuracy", r.best_mean_accuracy},
          {"per_candidate", std::move(per)}};
}

CvResult cv_from(StrictObject o) {
  CvResult r;
  r.best = params_from(o.child("best"));
  r.best_mean_accuracy = o.get<double>("best_mean_accuracy");
  const auto& per = o.at("per_candidate");
  for (std::size_t i = 0; i < per.size(); ++i) {
    StrictObject c(per[i], o.where("per_candidate") + "[" + std::to_string(i) + "]", kParse);
    CandidateScore s;
    s.params = params_from(c.child("params"));
    s.fold_accuracies = c.get<std::vector<double>>("fold_accuracies");
    s.mean_accuracy = c.get<double>("mean_accuracy");
    c.finish();
    r.per_candidate.push_back(std::move(s));
  }
  o.finish();
  return r;
}

json record_json(const InvocationRecord& r) {
  json j = {{"request_id", r.request_id},
            {"replica_id", r.replica_id},
            {"node_id", r.node_id},
            {"request_bytes", r.request_bytes},
            {"response_bytes", r.response_bytes},
            {"compute_seconds", r.compute_seconds},
            {"compute_scale", r.compute_scale},
            {"network_seconds", r.network_seconds},
            {"status", r.status}};
  if (r.cv_result) j["cv_result"] = cv_json(*r.cv_result);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

InvocationRecord record_from(StrictObject o) {
  InvocationRecord r;
  r.request_id = o.get<std::size_t>("request_id");
  r.replica_id = o.get<std::size_t>("replica_id");
  r.node_id = o.get<std::string>("node_id");
  r.request_bytes = o.get<std::uint64_t>("request_bytes");
  r.response_bytes = o.get<std::uint64_t>("response_bytes");
  r.compute_seconds = o.get<double>("compute_seconds");
  r.compute_scale = o.get<double>("compute_scale");
  r.network_seconds = o.get<double>("network_seconds");
  r.status = o.get<int>("status");
  if (o.has("cv_result")) r.cv_result = cv_from(o.child("cv_result"));
  r.error = o.get_or<std::string>("error", "");
  o.finish();
  r.total_seconds = r.network_seconds + r.compute_seconds * r.compute_scale;
  return r;
}

json spread_json(const Spread& s, bool with_iqr) {
  json j = {{"min", s.min},       {"q1", s.q1},   {"median", s.median},
            {"q3", s.q3},         {"max", s.max}, {"mean", s.mean}};
  if (with_iqr) j["iqr"] = s.iqr();
  return j;
}

Spread spread_from(StrictObject o) {
  Spread s;
  s.min = o.get<double>("min");
  s.q1 = o.get<double>("q1");
  s.median = o.get<double>("median");
  s.q3 = o.get<double>("q3");
  s.max = o.get<double>("max");
  s.mean = o.get<double>("mean");
  o.has("iqr");
  o.finish();
  return s;
}

json summary_json(const ScenarioSummary& s) {
  return {{"successful_repetitions", s.successful_repetitions},
          {"elapsed_seconds", spread_json(s.elapsed_seconds, true)},
          {"final_accuracy", spread_json(s.final_accuracy, false)}};
}

ScenarioSummary summary_from(StrictObject o) {
  ScenarioSummary s;
  s.successful_repetitions = o.get<std::size_t>("successful_repetitions");
  s.elapsed_seconds = spread_from(o.child("elapsed_seconds"));
  s.final_accuracy = spread_from(o.child("final_accuracy"));
  o.finish();
  return s;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string result_to_json(const ScenarioResult& result, int indent) {
  json reps = json::array();
  for (const auto& r : result.repetitions) {
    json records = json::array();
    for (const auto& rec : r.records) records.push_back(record_json(rec));
    json j = {{"rep_index", r.rep_index},
              {"elapsed_seconds", r.elapsed_seconds},
              {"chosen_params", params_json(r.chosen_params)},
              {"final_accuracy", r.final_accuracy},
              {"records", std::move(records)}};
    if (!r.error.empty()) j["error"] = r.error;
    reps.push_back(std::move(j));
  }
  const json root = {{"config", config_json(result.config)},
                     {"repetitions", std::move(reps)},
                     {"summary", summary_json(result.summary)}};
  return root.dump(indent);
}

ScenarioResult result_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(kParse, std::string("result: invalid JSON: ") + e.what());
  }
  StrictObject o(root, "", kParse);
  ScenarioResult result;
  result.config = config_from(o.child("config"));
  const auto& reps = o.at("repetitions");
  if (!reps.is_array()) fail(kParse, "repetitions: expected an array");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    StrictObject r(reps[i], "repetitions[" + std::to_string(i) + "]", kParse);
    RepetitionResult rr;
    rr.rep_index = r.get<std::size_t>("rep_index");
    rr.elapsed_seconds = r.get<double>("elapsed_seconds");
    rr.chosen_params = params_from(r.child("chosen_params"));
    rr.final_accuracy = r.get<double>("final_accuracy");
    const auto& records = r.at("records");
    if (!records.is_array()) fail(kParse, r.where("records") + ": expected an array");
    for (std::size_t k = 0; k < records.size(); ++k)
      rr.records.push_back(record_from(
          StrictObject(records[k], r.where("records") + "[" + std::to_string(k) + "]", kParse)));
    rr.error = r.get_or<std::string>("error", "");
    r.finish();
    result.repetitions.push_back(std::move(rr));
  }
  result.summary = summary_from(o.child("summary"));
  o.finish();
  if (result.repetitions.size() != result.config.repetitions)
    fail(kParse, "result: repetition count does not match config");
  return result;
}

ScenarioResult load_result(const std::filesystem::path& path) {
  return result_from_json(read_text_file(path));
}

std::string result_to_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "rep,elapsed_s,accuracy,chosen_C,chosen_epochs\n";
  for (const auto& r : result.repetitions) {
    if (!r.ok()) continue;
    out << r.rep_index << ',' << fmt("%.9g", r.elapsed_seconds) << ','
        << fmt("%.9g", r.final_accuracy) << ',' << fmt("%.9g", r.chosen_params.C) << ','
        << r.chosen_params.epochs << '\n';
  }
  return out.str();
}

std::string comparison_to_json(const ComparisonReport& report, int indent) {
  const json j = {{"scenario_a", report.scenario_a},
                  {"scenario_b", report.scenario_b},
                  {"median_response_reduction_pct", report.median_response_reduction_pct},
                  {"median_accuracy_delta_pp", report.median_accuracy_delta_pp},
                  {"summary_a", summary_json(report.summary_a)},
                  {"summary_b", summary_json(report.summary_b)}};
  return j.dump(indent);
}

std::string format_summary(const ScenarioResult& result) {
  const auto& s = result.summary;
  std::ostringstream out;
  out << "scenario: " << result.config.name << '\n'
      << "repetitions: " << s.successful_repetitions << '/' << result.repetitions.size()
      << " succeeded\n"
      << "response time [s]: median " << fmt("%.4f", s.elapsed_seconds.median) << ", mean "
      << fmt("%.4f", s.elapsed_seconds.mean) << ", min " << fmt("%.4f", s.elapsed_seconds.min)
      << ", max " << fmt("%.4f", s.elapsed_seconds.max) << ", IQR "
      << fmt("%.4f", s.elapsed_seconds.iqr()) << '\n'
      << "final accuracy: median " << fmt("%.4f", s.final_accuracy.median) << ", mean "
      << fmt("%.4f", s.final_accuracy.mean) << ", min " << fmt("%.4f", s.final_accuracy.min)
      << ", max " << fmt("%.4f", s.final_accuracy.max) << '\n';
  return out.str();
}

std::string format_comparison(const ComparisonReport& report) {
  std::ostringstream out;
  out << report.scenario_a << " vs " << report.scenario_b << '\n'
      << "median response time [s]: " << fmt("%.4f", report.summary_a.elapsed_seconds.median)
      << " vs " << fmt("%.4f", report.summary_b.elapsed_seconds.median) << '\n'
      << "response time reduction: " << fmt("%.1f", report.median_response_reduction_pct)
      << "%\n"
      << "median accuracy delta: " << fmt("%.2f", report.median_accuracy_delta_pp) << " pp\n";
  return out.str();
}

std::vector<QuantileRow> plot_rows(std::span<const ScenarioResult> results) {
  std::vector<QuantileRow> rows;
  for (const auto& r : results)
    rows.push_back({r.config.name, "response_time_s", r.summary.elapsed_seconds});
  for (const auto& r : results)
    rows.push_back({r.config.name, "accuracy", r.summary.final_accuracy});
  return rows;
}

std::string plotdata_csv(std::span<const QuantileRow> rows) {
  std::ostringstream out;
  out << "scenario,metric,min,q1,median,q3,max\n";
  for (const auto& r : rows)
    out << csv_field(r.scenario) << ',' << r.metric << ',' << fmt("%.9g", r.spread.min) << ','
        << fmt("%.9g", r.spread.q1) << ',' << fmt("%.9g", r.spread.median) << ','
        << fmt("%.9g", r.spread.q3) << ',' << fmt("%.9g", r.spread.max) << '\n';
  return out.str();
}

std::string plotdata_svg(std::span<const QuantileRow> rows) {
  std::vector<std::string> metrics;
  for (const auto& r : rows)
    if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end())
      metrics.push_back(r.metric);

  constexpr double kPanelW = 320, kPanelH = 260, kTop = 30, kBottom = 40, kLeft = 60;
  const double width = kPanelW * static_cast<double>(std::max<std::size_t>(metrics.size(), 1));
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << kPanelH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    std::vector<const QuantileRow*> panel;
    for (const auto& r : rows)
      if (r.metric == metrics[m]) panel.push_back(&r);
    double lo = panel.front()->spread.min, hi = panel.front()->spread.max;
    for (const auto* r : panel) {
      lo = std::min(lo, r->spread.min);
      hi = std::max(hi, r->spread.max);
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5 * std::max(std::abs(lo), 1e-3);
      hi += 0.5 * std::max(std::abs(hi), 1e-3);
    }
    const double x0 = kPanelW * static_cast<double>(m);
    const double plot_h = kPanelH - kTop - kBottom;
    auto y = [&](double v) { return kTop + (hi - v) / (hi - lo) * plot_h; };
    svg << "<g>\n<text x=\"" << x0 + kPanelW / 2 << "\" y=\"18\" text-anchor=\"middle\">"
        << xml_escape(metrics[m]) << "</text>\n";
    svg << "<line x1=\"" << x0 + kLeft << "\" y1=\"" << kTop << "\" x2=\"" << x0 + kLeft
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x0 + kLeft - 4 << "\" y=\"" << y(hi) + 4
        << "\" text-anchor=\"end\">" << fmt("%.4g", hi) << "</text>\n";
    svg << "<text x=\"" << x0 + kLeft - 4 << "\" y=\"" << y(lo) + 4
        << "\" text-anchor=\"end\">" << fmt("%.4g", lo) << "</text>\n";
    const double slot = (kPanelW - kLeft - 10) / static_cast<double>(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i) {
      const auto& s = panel[i]->spread;
      const double cx = x0 + kLeft + slot * (static_cast<double>(i) + 0.5);
      const double half = std::min(30.0, slot / 3);
      svg << "<line x1=\"" << cx << "\" y1=\"" << y(s.max) << "\" x2=\"" << cx << "\" y2=\""
          << y(s.min) << "\" stroke=\"black\"/>\n";
      svg << "<rect x=\"" << cx - half << "\" y=\"" << y(s.q3) << "\" width=\"" << 2 * half
          << "\" height=\"" << std::max(0.5, y(s.q1) - y(s.q3))
          << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
      svg << "<line x1=\"" << cx - half << "\" y1=\"" << y(s.median) << "\" x2=\"" << cx + half
          << "\" y2=\"" << y(s.median) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << cx << "\" y=\"" << kPanelH - 15 << "\" text-anchor=\"middle\">"
          << xml_escape(panel[i]->scenario) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sfbench
