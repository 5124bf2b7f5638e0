#include "zospg/zospg.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "zospg/config.hpp"
#include "zospg/experiment.hpp"
#include "zospg/kernel.hpp"
#include "zospg/types.hpp"
#include "zospg/verify.hpp"

struct zospg_kernel {
  zospg::KernelSpec spec;
};

struct zospg_experiment {
  zospg::ExperimentConfig cfg;
  std::filesystem::path output;
  std::size_t workers = 1;
};

namespace {

thread_local std::string last_error;

zospg_status fail(zospg_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
zospg_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const zospg::ConfigError& e) {
    return fail(ZOSPG_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ZOSPG_ERR_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(ZOSPG_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(ZOSPG_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(ZOSPG_ERR_RUNTIME, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* zospg_version(void) { return ZOSPG_VERSION_STRING; }

const char* zospg_last_error(void) { return last_error.c_str(); }

void zospg_string_free(char* s) { std::free(s); }

zospg_status zospg_kernel_create(double beta, zospg_kernel** out) {
  if (!out) return fail(ZOSPG_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new zospg_kernel{zospg::build_kernel(beta)};
    return ZOSPG_OK;
  });
}

void zospg_kernel_destroy(zospg_kernel* kernel) { delete kernel; }

zospg_status zospg_kernel_eval(const zospg_kernel* kernel, double r, double* out) {
  if (!kernel || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  *out = kernel->spec(r);
  return ZOSPG_OK;
}

zospg_status zospg_kernel_order(const zospg_kernel* kernel, int* out) {
  if (!kernel || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  *out = kernel->spec.order();
  return ZOSPG_OK;
}

zospg_status zospg_kernel_constants(const zospg_kernel* kernel, double* kappa_beta, double* kappa) {
  if (!kernel) return fail(ZOSPG_ERR_ARGUMENT, "kernel is null");
  if (kappa_beta) *kappa_beta = kernel->spec.kappa_beta();
  if (kappa) *kappa = kernel->spec.kappa();
  return ZOSPG_OK;
}

zospg_status zospg_kernel_moment(const zospg_kernel* kernel, int j, double* out) {
  if (!kernel || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  if (j < 0) return fail(ZOSPG_ERR_ARGUMENT, "moment order must be >= 0");
  return guarded([&] {
    *out = zospg::kernel_moment(kernel->spec, j);
    return ZOSPG_OK;
  });
}

zospg_status zospg_experiment_load(const char* path, zospg_experiment** out) {
  if (!path || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new zospg_experiment{zospg::load_config(path), {}, 1};
    return ZOSPG_OK;
  });
}

zospg_status zospg_experiment_parse(const char* text, zospg_experiment** out) {
  if (!text || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new zospg_experiment{zospg::parse_config(text), {}, 1};
    return ZOSPG_OK;
  });
}

void zospg_experiment_destroy(zospg_experiment* exp) { delete exp; }

zospg_status zospg_experiment_set_output(zospg_experiment* exp, const char* dir) {
  if (!exp || !dir) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  exp->output = dir;
  return ZOSPG_OK;
}

zospg_status zospg_experiment_set_seed(zospg_experiment* exp, uint64_t seed) {
  if (!exp) return fail(ZOSPG_ERR_ARGUMENT, "experiment is null");
  exp->cfg.seed = seed;
  return ZOSPG_OK;
}

zospg_status zospg_experiment_set_workers(zospg_experiment* exp, unsigned workers) {
  if (!exp) return fail(ZOSPG_ERR_ARGUMENT, "experiment is null");
  if (workers == 0) return fail(ZOSPG_ERR_ARGUMENT, "workers must be >= 1");
  exp->workers = workers;
  return ZOSPG_OK;
}

zospg_status zospg_experiment_set_trials(zospg_experiment* exp, size_t trials) {
  if (!exp) return fail(ZOSPG_ERR_ARGUMENT, "experiment is null");
  if (trials == 0) return fail(ZOSPG_ERR_CONFIG, "trials must be >= 1");
  exp->cfg.trials = trials;
  return ZOSPG_OK;
}

zospg_status zospg_experiment_set_iterations(zospg_experiment* exp, size_t iterations) {
  if (!exp) return fail(ZOSPG_ERR_ARGUMENT, "experiment is null");
  if (iterations == 0) return fail(ZOSPG_ERR_CONFIG, "iterations must be >= 1");
  exp->cfg.iterations = iterations;
  return ZOSPG_OK;
}

zospg_status zospg_experiment_run(zospg_experiment* exp, zospg_log_fn log, void* user,
                                  int* incomplete_methods) {
  if (!exp) return fail(ZOSPG_ERR_ARGUMENT, "experiment is null");
  return guarded([&] {
    zospg::RunOptions options;
    options.output_dir = exp->output;
    options.workers = exp->workers;
    if (log) options.log = [&](const std::string& line) { log(line.c_str(), user); };
    const zospg::ExperimentResult result = zospg::run_experiment(exp->cfg, options);
    int incomplete = 0;
    for (const auto& m : result.methods) incomplete += m.complete() ? 0 : 1;
    if (incomplete_methods) *incomplete_methods = incomplete;
    if (incomplete > 0) {
      return fail(ZOSPG_ERR_RUNTIME, "one or more trials aborted; see the log and summary.csv");
    }
    return ZOSPG_OK;
  });
}

zospg_status zospg_experiment_bound_report(const zospg_experiment* exp, char** out) {
  if (!exp || !out) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = duplicate(zospg::bound_report(exp->cfg));
    return *out ? ZOSPG_OK : fail(ZOSPG_ERR_RUNTIME, "out of memory");
  });
}

zospg_status zospg_plot(const char* const* aggregate_paths, size_t count, int with_bounds,
                        const char* out_path, zospg_log_fn log, void* user) {
  if ((!aggregate_paths && count > 0) || !out_path) return fail(ZOSPG_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::filesystem::path> files;
    for (size_t i = 0; i < count; ++i) files.emplace_back(aggregate_paths[i]);
    const auto warnings = zospg::plot_aggregate_files(files, with_bounds != 0, out_path);
    if (log) {
      for (const auto& w : warnings) log(w.c_str(), user);
    }
    return ZOSPG_OK;
  });
}

zospg_status zospg_verify(int quick, zospg_log_fn log, void* user, int* failures) {
  return guarded([&] {
    const zospg::VerifyReport report = zospg::verify_suite(quick != 0);
    if (log) {
      std::string table = report.table();
      std::size_t start = 0;
      for (std::size_t end = table.find('\n'); end != std::string::npos;
           start = end + 1, end = table.find('\n', start)) {
        log(table.substr(start, end - start).c_str(), user);
      }
    }
    if (failures) *failures = static_cast<int>(report.failures());
    return report.all_passed() ? ZOSPG_OK : fail(ZOSPG_ERR_VERIFY, "verification checks failed");
  });
}

}  // extern "C"
