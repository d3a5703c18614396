/*
 * C interface to the sfbench serverless edge-training benchmark.
 *
 * Every function returns an sfb_status. On failure a description of the last
 * error on the calling thread is available from sfb_last_error(). Objects
 * returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function.
 */
#ifndef SFBENCH_SFBENCH_H
#define SFBENCH_SFBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SFBENCH_BUILDING)
#    define SFB_API __declspec(dllexport)
#  else
#    define SFB_API __declspec(dllimport)
#  endif
#else
#  define SFB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfb_status {
  SFB_OK = 0,
  SFB_ERR_INVALID_ARGUMENT = 1,
  SFB_ERR_CONFIG = 2,
  SFB_ERR_IO = 3,
  SFB_ERR_PARSE = 4,
  SFB_ERR_RUNTIME = 5
} sfb_status;

typedef struct sfb_result sfb_result;         /* one scenario run */
typedef struct sfb_comparison sfb_comparison; /* scenario a vs b */

typedef struct sfb_run_options {
  int has_seed;
  uint64_t seed;
  int has_reps;
  uint64_t reps;
} sfb_run_options;

SFB_API const char* sfb_version(void);
SFB_API const char* sfb_last_error(void);
SFB_API const char* sfb_status_name(sfb_status status);

/* Scenario execution. `options` may be NULL. */
SFB_API sfb_status sfb_run_scenario_file(const char* config_path,
                                         const sfb_run_options* options,
                                         sfb_result** out);
SFB_API sfb_status sfb_run_scenario_json(const char* config_json,
                                         const char* base_dir,
                                         const sfb_run_options* options,
                                         sfb_result** out);
/* Checks a config file without running it. */
SFB_API sfb_status sfb_validate_config_file(const char* config_path);

SFB_API sfb_status sfb_result_load(const char* path, sfb_result** out);
SFB_API sfb_status sfb_result_write_json(const sfb_result* result, const char* path);
SFB_API sfb_status sfb_result_write_csv(const sfb_result* result, const char* path);
SFB_API size_t sfb_result_repetitions(const sfb_result* result);
SFB_API double sfb_result_median_elapsed(const sfb_result* result);
SFB_API double sfb_result_median_accuracy(const sfb_result* result);
/* Human-readable summary block; the string lives as long as `result`. */
SFB_API const char* sfb_result_summary(const sfb_result* result);
SFB_API void sfb_result_free(sfb_result* result);

SFB_API sfb_status sfb_compare(const sfb_result* a, const sfb_result* b,
                               sfb_comparison** out);
SFB_API double sfb_comparison_reduction_pct(const sfb_comparison* report);
SFB_API double sfb_comparison_accuracy_delta_pp(const sfb_comparison* report);
SFB_API sfb_status sfb_comparison_write_json(const sfb_comparison* report, const char* path);
SFB_API const char* sfb_comparison_text(const sfb_comparison* report);
SFB_API void sfb_comparison_free(sfb_comparison* report);

/* Quantile CSV (and optionally an SVG next to it at svg_path) for the box
 * plots of response time and accuracy. svg_path may be NULL. */
SFB_API sfb_status sfb_plotdata(const sfb_result* const* results, size_t count,
                                const char* csv_path, const char* svg_path);

/* The function entry point: request JSON bytes in, response JSON bytes out.
 * http_status receives 200, 400, 422 or 500. Free *response with
 * sfb_buffer_free. */
SFB_API sfb_status sfb_handle_request(const uint8_t* request, size_t request_len,
                                      uint8_t** response, size_t* response_len,
                                      int* http_status);
SFB_API void sfb_buffer_free(void* buffer);

#ifdef __cplusplus
}
#endif

#endif /* SFBENCH_SFBENCH_H */
