#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "zospg/config.hpp"
#include "zospg/csv.hpp"

namespace zospg {

/// Mean error curve of one method across trials with 0.95 confidence bands.
struct AggregateCurve {
  std::string key;
  std::string label;
  std::vector<std::size_t> iterations;  ///< strictly increasing
  std::vector<double> mean;
  std::vector<double> half_width;  ///< NaN when fewer than two trials
  std::size_t trials = 0;          ///< completed trials aggregated

  std::vector<AggregateRow> rows() const;
};

/// Two-sided 0.95 quantile: 1.96 for >= 30 trials, Student-t with
/// trials - 1 degrees of freedom below that. NaN for a single trial.
double ci_quantile(std::size_t trials);

/// Aggregates per-trial error series (all on the same checkpoints).
AggregateCurve aggregate(const std::vector<std::size_t>& iterations,
                         const std::vector<std::vector<double>>& errors);

/// Re-aggregates per-trial CSV files in the given order.
AggregateCurve aggregate_trial_files(const std::vector<std::filesystem::path>& files);

struct MethodOutcome {
  MethodSpec method;
  AggregateCurve curve;
  std::vector<double> bound;  ///< strongly convex error bound per checkpoint (empty when regularized)
  std::size_t failed = 0;
  std::vector<std::string> failures;
  bool complete() const { return failed == 0; }
};

struct ExperimentResult {
  std::filesystem::path output_dir;
  std::vector<MethodOutcome> methods;
  std::filesystem::path plot;
  std::filesystem::path plot_with_bounds;  ///< empty when no method has a bound
};

struct RunOptions {
  std::filesystem::path output_dir;  ///< empty: cfg.output_dir, then "zospg_out"
  std::size_t workers = 1;
  std::function<void(const std::string&)> log;
};

/// Runs every method x trial, writing
///   <out>/<key>/trial_NNNN.csv   iteration,error,queries
///   <out>/<key>_aggregate.csv    iteration,mean,ci_low,ci_high
///   <out>/<key>_bound.csv        iteration,bound (strongly convex methods)
///   <out>/summary.csv, <out>/errors.svg, <out>/errors_bounds.svg
/// Output is a deterministic function of the config (including its seed).
/// A failed trial is reported and marks its method incomplete.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Plots aggregate CSVs written by run_experiment. Labels come from the
/// sibling summary.csv when present (else the file's key); with_bounds adds
/// the sibling <key>_bound.csv as a dashed overlay where it exists.
/// Returns the plot warnings.
std::vector<std::string> plot_aggregate_files(const std::vector<std::filesystem::path>& files,
                                              bool with_bounds, const std::filesystem::path& out);

/// Checkpoint schedule: multiples of stride up to N, plus N.
std::vector<std::size_t> checkpoint_iterations(std::size_t N, std::size_t stride);

}  // namespace zospg
