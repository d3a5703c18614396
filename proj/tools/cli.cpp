#include "cli.hpp"

#include "sfbench/sfbench.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

namespace sfbench_cli {

namespace {

namespace fs = std::filesystem;

struct ResultDeleter {
  void operator()(sfb_result* r) const { sfb_result_free(r); }
};
using ResultPtr = std::unique_ptr<sfb_result, ResultDeleter>;

struct ComparisonDeleter {
  void operator()(sfb_comparison* c) const { sfb_comparison_free(c); }
};
using ComparisonPtr = std::unique_ptr<sfb_comparison, ComparisonDeleter>;

void report(std::ostream& err, const char* what, sfb_status status) {
  err << "error: " << what << " (" << sfb_status_name(status) << "): " << sfb_last_error()
      << '\n';
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed,
            std::optional<std::uint64_t> reps, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
  if (auto st = sfb_validate_config_file(config.c_str()); st != SFB_OK) {
    report(err, "invalid config", st);
    return kExitConfig;
  }
  sfb_run_options opts{};
  if (seed) {
    opts.has_seed = 1;
    opts.seed = *seed;
  }
  if (reps) {
    opts.has_reps = 1;
    opts.reps = *reps;
  }
  sfb_result* raw = nullptr;
  if (auto st = sfb_run_scenario_file(config.c_str(), &opts, &raw); st != SFB_OK) {
    report(err, "run failed", st);
    return st == SFB_ERR_CONFIG ? kExitConfig : kExitRuntime;
  }
  ResultPtr result(raw);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create " << out_dir << ": " << ec.message() << '\n';
    return kExitRuntime;
  }
  const auto json_path = (fs::path(out_dir) / "result.json").string();
  const auto csv_path = (fs::path(out_dir) / "result.csv").string();
  if (auto st = sfb_result_write_json(result.get(), json_path.c_str()); st != SFB_OK) {
    report(err, "writing result.json", st);
    return kExitRuntime;
  }
  if (auto st = sfb_result_write_csv(result.get(), csv_path.c_str()); st != SFB_OK) {
    report(err, "writing result.csv", st);
    return kExitRuntime;
  }
  out << sfb_result_summary(result.get());
  out << "wrote " << json_path << " and " << csv_path << '\n';
  return kExitOk;
}

ResultPtr load(const std::string& path, std::ostream& err) {
  sfb_result* raw = nullptr;
  if (auto st = sfb_result_load(path.c_str(), &raw); st != SFB_OK) {
    report(err, ("cannot read " + path).c_str(), st);
    return nullptr;
  }
  return ResultPtr(raw);
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  auto a = load(a_path, err);
  if (!a) return kExitConfig;
  auto b = load(b_path, err);
  if (!b) return kExitConfig;
  sfb_comparison* raw = nullptr;
  if (auto st = sfb_compare(a.get(), b.get(), &raw); st != SFB_OK) {
    report(err, "compare failed", st);
    return kExitConfig;
  }
  ComparisonPtr cmp(raw);
  if (!out_path.empty()) {
    if (auto st = sfb_comparison_write_json(cmp.get(), out_path.c_str()); st != SFB_OK) {
      report(err, "writing comparison", st);
      return kExitConfig;
    }
  }
  out << sfb_comparison_text(cmp.get());
  return kExitOk;
}

int cmd_plotdata(const std::vector<std::string>& inputs, const std::string& out_path,
                 bool svg, std::ostream& out, std::ostream& err) {
  std::vector<ResultPtr> owned;
  std::vector<const sfb_result*> view;
  for (const auto& path : inputs) {
    auto r = load(path, err);
    if (!r) return kExitConfig;
    view.push_back(r.get());
    owned.push_back(std::move(r));
  }
  std::string svg_path;
  if (svg) svg_path = fs::path(out_path).replace_extension(".svg").string();
  if (auto st = sfb_plotdata(view.data(), view.size(), out_path.c_str(),
                             svg ? svg_path.c_str() : nullptr);
      st != SFB_OK) {
    report(err, "plotdata failed", st);
    return kExitConfig;
  }
  out << "wrote " << out_path;
  if (svg) out << " and " << svg_path;
  out << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Serverless edge vs cloud ML training benchmark", "sfbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sfb_version()));

  std::string config, out_dir;
  std::optional<std::uint64_t> seed, reps;
  auto* run_cmd = app.add_subcommand("run", "Execute one scenario config");
  run_cmd->add_option("--config", config, "Scenario config JSON")->required();
  run_cmd->add_option("--seed", seed, "Override the master seed");
  run_cmd->add_option("--reps", reps, "Override the repetition count");
  run_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::string a_path, b_path, compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two scenario results");
  compare_cmd->add_option("a", a_path, "Result of the proposed approach")->required();
  compare_cmd->add_option("b", b_path, "Result of the baseline")->required();
  compare_cmd->add_option("--out", compare_out, "Write the comparison report JSON here");

  std::vector<std::string> inputs;
  std::string plot_out;
  bool svg = false;
  auto* plot_cmd = app.add_subcommand("plotdata", "Emit box-plot quantiles");
  plot_cmd->add_option("results", inputs, "Result JSON files")->required();
  plot_cmd->add_option("--out", plot_out, "Output CSV path")->required();
  plot_cmd->add_flag("--svg", svg, "Also write an SVG box plot next to the CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << sfb_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (run_cmd->parsed()) return cmd_run(config, seed, reps, out_dir, out, err);
  if (compare_cmd->parsed()) return cmd_compare(a_path, b_path, compare_out, out, err);
  return cmd_plotdata(inputs, plot_out, svg, out, err);
}

}  // namespace sfbench_cli
