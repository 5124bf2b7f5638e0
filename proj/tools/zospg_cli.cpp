// zospg command line: run, plot, verify, bound.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zospg/zospg.h"

namespace {

void print_line(const char* line, void*) {
  std::fputs(line, stdout);
  std::fputc('\n', stdout);
  std::fflush(stdout);
}

void print_error_line(const char* line, void*) {
  std::fputs(line, stderr);
  std::fputc('\n', stderr);
}

int report(zospg_status status) {
  if (status != ZOSPG_OK) std::fprintf(stderr, "zospg: %s\n", zospg_last_error());
  return static_cast<int>(status);
}

// Unwraps a handle and frees it on scope exit.
struct Experiment {
  zospg_experiment* handle = nullptr;
  ~Experiment() { zospg_experiment_destroy(handle); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeroth-order projected gradient benchmarks"};
  app.set_version_flag("--version", std::string(zospg_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides $ZOSPG_OUTPUT_DIR and the config)");
  run->add_option("--workers", workers, "parallel trial workers")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "master seed (overrides the config)");

  std::vector<std::string> aggregates;
  bool with_bounds = false;
  std::string plot_out = "errors.svg";
  auto* plot = app.add_subcommand("plot", "plot aggregate CSVs as SVG");
  plot->add_option("aggregates", aggregates, "<key>_aggregate.csv files")->required();
  plot->add_flag("--bounds", with_bounds, "overlay the sibling <key>_bound.csv files");
  plot->add_option("--out", plot_out, "SVG path");

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_flag("--quick", quick, "smaller Monte-Carlo sizes");

  std::string bound_config;
  auto* bound = app.add_subcommand("bound", "print error bounds and iteration counts");
  bound->add_option("config", bound_config, "experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ZOSPG_ERR_ARGUMENT;
  }

  if (*run) {
    Experiment exp;
    if (zospg_status s = zospg_experiment_load(config.c_str(), &exp.handle)) return report(s);
    if (out_dir.empty()) {
      if (const char* env = std::getenv("ZOSPG_OUTPUT_DIR"); env && *env) out_dir = env;
    }
    if (!out_dir.empty()) zospg_experiment_set_output(exp.handle, out_dir.c_str());
    if (*seed_opt) zospg_experiment_set_seed(exp.handle, seed);
    zospg_experiment_set_workers(exp.handle, workers);
    int incomplete = 0;
    return report(zospg_experiment_run(exp.handle, print_line, nullptr, &incomplete));
  }
  if (*plot) {
    std::vector<const char*> paths;
    for (const auto& a : aggregates) paths.push_back(a.c_str());
    const zospg_status s = zospg_plot(paths.data(), paths.size(), with_bounds ? 1 : 0,
                                      plot_out.c_str(), print_error_line, nullptr);
    if (s == ZOSPG_OK) std::printf("wrote %s\n", plot_out.c_str());
    return report(s);
  }
  if (*verify) {
    int failures = 0;
    return report(zospg_verify(quick ? 1 : 0, print_line, nullptr, &failures));
  }
  if (*bound) {
    Experiment exp;
    if (zospg_status s = zospg_experiment_load(bound_config.c_str(), &exp.handle)) return report(s);
    char* text = nullptr;
    const zospg_status s = zospg_experiment_bound_report(exp.handle, &text);
    if (s == ZOSPG_OK) {
      std::fputs(text, stdout);
      zospg_string_free(text);
    }
    return report(s);
  }
  return 0;
}
