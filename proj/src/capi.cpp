#include "sfbench/sfbench.h"

#include "sfbench/config.hpp"
#include "sfbench/error.hpp"
#include "sfbench/payload.hpp"
#include "sfbench/report.hpp"
#include "sfbench/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct sfb_result {
  sfbench::ScenarioResult value;
  std::string summary;
};

struct sfb_comparison {
  sfbench::ComparisonReport value;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

sfb_status to_status(sfbench::ErrorKind kind) {
  switch (kind) {
    case sfbench::ErrorKind::InvalidArgument: return SFB_ERR_INVALID_ARGUMENT;
    case sfbench::ErrorKind::Config: return SFB_ERR_CONFIG;
    case sfbench::ErrorKind::Io: return SFB_ERR_IO;
    case sfbench::ErrorKind::Parse: return SFB_ERR_PARSE;
    case sfbench::ErrorKind::Runtime: return SFB_ERR_RUNTIME;
  }
  return SFB_ERR_RUNTIME;
}

template <typename F>
sfb_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SFB_OK;
  } catch (const sfbench::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SFB_ERR_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SFB_ERR_RUNTIME;
  }
}

void require(bool ok, const char* what) {
  if (!ok) sfbench::fail(sfbench::ErrorKind::InvalidArgument, what);
}

void apply(sfbench::ScenarioConfig& cfg, const sfb_run_options* options) {
  if (options == nullptr) return;
  if (options->has_seed) cfg.set_seed(options->seed);
  if (options->has_reps) {
    cfg.repetitions = static_cast<std::size_t>(options->reps);
    cfg.validate();
  }
}

sfb_result* wrap(sfbench::ScenarioResult value) {
  auto* r = new sfb_result{std::move(value), {}};
  r->summary = sfbench::format_summary(r->value);
  return r;
}

}  // namespace

extern "C" {

const char* sfb_version(void) { return "1.0.0"; }

const char* sfb_last_error(void) { return g_last_error.c_str(); }

const char* sfb_status_name(sfb_status status) {
  switch (status) {
    case SFB_OK: return "ok";
    case SFB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SFB_ERR_CONFIG: return "config error";
    case SFB_ERR_IO: return "i/o error";
    case SFB_ERR_PARSE: return "parse error";
    case SFB_ERR_RUNTIME: return "runtime error";
  }
  return "unknown";
}

sfb_status sfb_run_scenario_file(const char* config_path, const sfb_run_options* options,
                                 sfb_result** out) {
  return guarded([&] {
    require(config_path != nullptr && out != nullptr, "null argument");
    auto cfg = sfbench::load_config(config_path);
    apply(cfg, options);
    *out = wrap(sfbench::run_scenario(cfg));
  });
}

sfb_status sfb_run_scenario_json(const char* config_json, const char* base_dir,
                                 const sfb_run_options* options, sfb_result** out) {
  return guarded([&] {
    require(config_json != nullptr && out != nullptr, "null argument");
    auto cfg = sfbench::parse_config(config_json, base_dir ? base_dir : "");
    apply(cfg, options);
    *out = wrap(sfbench::run_scenario(cfg));
  });
}

sfb_status sfb_validate_config_file(const char* config_path) {
  return guarded([&] {
    require(config_path != nullptr, "null argument");
    (void)sfbench::load_config(config_path);
  });
}

sfb_status sfb_result_load(const char* path, sfb_result** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = wrap(sfbench::load_result(path));
  });
}

sfb_status sfb_result_write_json(const sfb_result* result, const char* path) {
  return guarded([&] {
    require(result != nullptr && path != nullptr, "null argument");
    sfbench::write_text_file(path, sfbench::result_to_json(result->value));
  });
}

sfb_status sfb_result_write_csv(const sfb_result* result, const char* path) {
  return guarded([&] {
    require(result != nullptr && path != nullptr, "null argument");
    sfbench::write_text_file(path, sfbench::result_to_csv(result->value));
  });
}

size_t sfb_result_repetitions(const sfb_result* result) {
  return result ? result->value.repetitions.size() : 0;
}

double sfb_result_median_elapsed(const sfb_result* result) {
  return result ? result->value.summary.elapsed_seconds.median : 0.0;
}

double sfb_result_median_accuracy(const sfb_result* result) {
  return result ? result->value.summary.final_accuracy.median : 0.0;
}

const char* sfb_result_summary(const sfb_result* result) {
  return result ? result->summary.c_str() : "";
}

void sfb_result_free(sfb_result* result) { delete result; }

sfb_status sfb_compare(const sfb_result* a, const sfb_result* b, sfb_comparison** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    auto report = sfbench::compare(a->value, b->value);
    auto* c = new sfb_comparison{std::move(report), {}};
    c->text = sfbench::format_comparison(c->value);
    *out = c;
  });
}

double sfb_comparison_reduction_pct(const sfb_comparison* report) {
  return report ? report->value.median_response_reduction_pct : 0.0;
}

double sfb_comparison_accuracy_delta_pp(const sfb_comparison* report) {
  return report ? report->value.median_accuracy_delta_pp : 0.0;
}

sfb_status sfb_comparison_write_json(const sfb_comparison* report, const char* path) {
  return guarded([&] {
    require(report != nullptr && path != nullptr, "null argument");
    sfbench::write_text_file(path, sfbench::comparison_to_json(report->value));
  });
}

const char* sfb_comparison_text(const sfb_comparison* report) {
  return report ? report->text.c_str() : "";
}

void sfb_comparison_free(sfb_comparison* report) { delete report; }

sfb_status sfb_plotdata(const sfb_result* const* results, size_t count, const char* csv_path,
                        const char* svg_path) {
  return guarded([&] {
    require(results != nullptr && count > 0 && csv_path != nullptr, "null argument");
    std::vector<sfbench::ScenarioResult> values;
    for (size_t i = 0; i < count; ++i) {
      require(results[i] != nullptr, "null result");
      values.push_back(results[i]->value);
    }
    const auto rows = sfbench::plot_rows(values);
    sfbench::write_text_file(csv_path, sfbench::plotdata_csv(rows));
    if (svg_path != nullptr) sfbench::write_text_file(svg_path, sfbench::plotdata_svg(rows));
  });
}

sfb_status sfb_handle_request(const uint8_t* request, size_t request_len, uint8_t** response,
                              size_t* response_len, int* http_status) {
  return guarded([&] {
    require(response != nullptr && response_len != nullptr, "null argument");
    require(request != nullptr || request_len == 0, "null request");
    const auto bytes = sfbench::handle_training_request({request, request_len});
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *response = buf;
    *response_len = bytes.size();
    if (http_status != nullptr) {
      try {
        *http_status = sfbench::decode_response(bytes).status;
      } catch (const sfbench::Error&) {
        *http_status = 500;
      }
    }
  });
}

void sfb_buffer_free(void* buffer) { std::free(buffer); }

}  // extern "C"
