#include "sfbench/sfbench.h"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

namespace {

const char* kConfig = R"({
  "name": "capi",
  "dataset": {"synthetic": {"n_docs": 100, "vocab_size": 60, "noise": 0.2, "seed": 1}},
  "split": {"test_fraction": 0.2, "train_shards": [0.4, 0.4]},
  "nodes": [
    {"id": "a", "link": {"delay_ms": 1.25, "jitter_ms": 0.25, "loss_pct": 0.02, "bandwidth_mbps": 1000}},
    {"id": "b", "link": {"delay_ms": 1.25, "jitter_ms": 0.25, "loss_pct": 0.02, "bandwidth_mbps": 1000}}
  ],
  "replica_count": 2, "concurrency": 2,
  "cv": {"folds": 3, "grid": {"C": [1.0], "epochs": [2]}},
  "repetitions": 3, "seed": 9
})";

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("run, persist, reload and compare through the C API") {
  sfb_run_options opts{};
  opts.has_reps = 1;
  opts.reps = 2;
  sfb_result* r = nullptr;
  REQUIRE(sfb_run_scenario_json(kConfig, nullptr, &opts, &r) == SFB_OK);
  CHECK(sfb_result_repetitions(r) == 2);
  CHECK(sfb_result_median_accuracy(r) > 0.5);
  CHECK(std::string(sfb_result_summary(r)).find("scenario: capi") != std::string::npos);

  const auto json = temp_path("sfbench_capi_result.json");
  const auto csv = temp_path("sfbench_capi_result.csv");
  REQUIRE(sfb_result_write_json(r, json.c_str()) == SFB_OK);
  REQUIRE(sfb_result_write_csv(r, csv.c_str()) == SFB_OK);

  sfb_result* loaded = nullptr;
  REQUIRE(sfb_result_load(json.c_str(), &loaded) == SFB_OK);
  CHECK(sfb_result_median_elapsed(loaded) == sfb_result_median_elapsed(r));

  sfb_comparison* cmp = nullptr;
  REQUIRE(sfb_compare(r, loaded, &cmp) == SFB_OK);
  CHECK(sfb_comparison_reduction_pct(cmp) == 0.0);
  CHECK(sfb_comparison_accuracy_delta_pp(cmp) == 0.0);
  CHECK(std::string(sfb_comparison_text(cmp)).find("response time reduction: 0.0%") !=
        std::string::npos);

  const sfb_result* both[] = {r, loaded};
  const auto plot = temp_path("sfbench_capi_plot.csv");
  const auto svg = temp_path("sfbench_capi_plot.svg");
  CHECK(sfb_plotdata(both, 2, plot.c_str(), svg.c_str()) == SFB_OK);
  CHECK(std::filesystem::exists(svg));

  sfb_comparison_free(cmp);
  sfb_result_free(loaded);
  sfb_result_free(r);
  for (const auto& p : {json, csv, plot, svg}) std::filesystem::remove(p);
}

TEST_CASE("status codes and last error") {
  sfb_result* r = nullptr;
  CHECK(sfb_run_scenario_file("/nonexistent/config.json", nullptr, &r) == SFB_ERR_CONFIG);
  CHECK(r == nullptr);
  CHECK(std::strlen(sfb_last_error()) > 0);
  CHECK(sfb_run_scenario_json("{}", nullptr, nullptr, &r) == SFB_ERR_CONFIG);
  CHECK(sfb_result_load("/nonexistent/result.json", &r) == SFB_ERR_IO);
  CHECK(sfb_run_scenario_json(nullptr, nullptr, nullptr, &r) == SFB_ERR_INVALID_ARGUMENT);

  sfb_run_options zero{};
  zero.has_reps = 1;
  zero.reps = 0;
  CHECK(sfb_run_scenario_json(kConfig, nullptr, &zero, &r) == SFB_ERR_CONFIG);
  CHECK(std::string(sfb_status_name(SFB_ERR_PARSE)) == "parse error");
}

TEST_CASE("function entry point") {
  const std::string req =
      R"({"docs":["good news today","fine weather report","aliens stole votes","miracle cure hoax"],)"
      R"("labels":["REAL","REAL","FAKE","FAKE"],"folds":2,)"
      R"("grid":{"candidates":[{"C":1.0,"epochs":3,"shuffle_seed":0}]},"seed":4})";
  uint8_t* resp = nullptr;
  size_t len = 0;
  int status = 0;
  REQUIRE(sfb_handle_request(reinterpret_cast<const uint8_t*>(req.data()), req.size(), &resp,
                             &len, &status) == SFB_OK);
  CHECK(status == 200);
  const std::string body(reinterpret_cast<char*>(resp), len);
  CHECK(body.find("\"best\"") != std::string::npos);
  CHECK(body.find("\"compute_seconds\"") != std::string::npos);
  sfb_buffer_free(resp);

  const std::string bad = req.substr(0, 20);
  REQUIRE(sfb_handle_request(reinterpret_cast<const uint8_t*>(bad.data()), bad.size(), &resp,
                             &len, &status) == SFB_OK);
  CHECK(status == 400);
  CHECK(std::string(reinterpret_cast<char*>(resp), len).find("\"error\"") != std::string::npos);
  sfb_buffer_free(resp);
}
