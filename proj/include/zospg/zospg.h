/* zospg: zeroth-order stochastic projected gradient with Legendre kernel smoothing. */
#ifndef ZOSPG_H
#define ZOSPG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ZOSPG_BUILDING_LIBRARY)
#    define ZOSPG_API __declspec(dllexport)
#  else
#    define ZOSPG_API __declspec(dllimport)
#  endif
#else
#  define ZOSPG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zospg_status {
  ZOSPG_OK = 0,
  ZOSPG_ERR_ARGUMENT = 1,
  ZOSPG_ERR_CONFIG = 2,
  ZOSPG_ERR_RUNTIME = 3,
  ZOSPG_ERR_VERIFY = 4,
  ZOSPG_ERR_IO = 5
} zospg_status;

typedef struct zospg_kernel zospg_kernel;
typedef struct zospg_experiment zospg_experiment;

/* Receives one log line (no trailing newline). */
typedef void (*zospg_log_fn)(const char* line, void* user);

ZOSPG_API const char* zospg_version(void);
/* Message of the last failed call on this thread; "" if none. */
ZOSPG_API const char* zospg_last_error(void);
ZOSPG_API void zospg_string_free(char* s);

/* Kernels */
ZOSPG_API zospg_status zospg_kernel_create(double beta, zospg_kernel** out);
ZOSPG_API void zospg_kernel_destroy(zospg_kernel* kernel);
ZOSPG_API zospg_status zospg_kernel_eval(const zospg_kernel* kernel, double r, double* out);
ZOSPG_API zospg_status zospg_kernel_order(const zospg_kernel* kernel, int* out);
ZOSPG_API zospg_status zospg_kernel_constants(const zospg_kernel* kernel, double* kappa_beta,
                                              double* kappa);
/* E[r^j K(r)], r uniform on [-1, 1]. */
ZOSPG_API zospg_status zospg_kernel_moment(const zospg_kernel* kernel, int j, double* out);

/* Experiments */
ZOSPG_API zospg_status zospg_experiment_load(const char* path, zospg_experiment** out);
ZOSPG_API zospg_status zospg_experiment_parse(const char* text, zospg_experiment** out);
ZOSPG_API void zospg_experiment_destroy(zospg_experiment* exp);
/* Overrides the config's output directory. */
ZOSPG_API zospg_status zospg_experiment_set_output(zospg_experiment* exp, const char* dir);
ZOSPG_API zospg_status zospg_experiment_set_seed(zospg_experiment* exp, uint64_t seed);
ZOSPG_API zospg_status zospg_experiment_set_workers(zospg_experiment* exp, unsigned workers);
ZOSPG_API zospg_status zospg_experiment_set_trials(zospg_experiment* exp, size_t trials);
ZOSPG_API zospg_status zospg_experiment_set_iterations(zospg_experiment* exp, size_t iterations);
/* Runs all methods and trials. incomplete_methods (optional) receives the
 * number of methods with aborted trials; that case returns ZOSPG_ERR_RUNTIME. */
ZOSPG_API zospg_status zospg_experiment_run(zospg_experiment* exp, zospg_log_fn log, void* user,
                                            int* incomplete_methods);
/* Bound numbers for every method; free with zospg_string_free. */
ZOSPG_API zospg_status zospg_experiment_bound_report(const zospg_experiment* exp, char** out);

/* SVG from aggregate CSVs written by a run. */
ZOSPG_API zospg_status zospg_plot(const char* const* aggregate_paths, size_t count, int with_bounds,
                                  const char* out_path, zospg_log_fn log, void* user);

/* Self-check suite. Prints the table through log; ZOSPG_ERR_VERIFY when any check fails. */
ZOSPG_API zospg_status zospg_verify(int quick, zospg_log_fn log, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* ZOSPG_H */
