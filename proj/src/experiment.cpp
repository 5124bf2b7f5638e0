#include "zospg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "zospg/plot.hpp"

namespace zospg {

std::vector<AggregateRow> AggregateCurve::rows() const {
  std::vector<AggregateRow> out;
  out.reserve(iterations.size());
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    out.push_back({iterations[i], mean[i], mean[i] - half_width[i], mean[i] + half_width[i]});
  }
  return out;
}

double ci_quantile(std::size_t trials) {
  if (trials < 2) return std::numeric_limits<double>::quiet_NaN();
  if (trials >= 30) return 1.96;
  const boost::math::students_t dist(static_cast<double>(trials - 1));
  return boost::math::quantile(dist, 0.975);
}

AggregateCurve aggregate(const std::vector<std::size_t>& iterations,
                         const std::vector<std::vector<double>>& errors) {
  for (std::size_t i = 1; i < iterations.size(); ++i) {
    if (iterations[i] <= iterations[i - 1]) {
      throw std::invalid_argument("aggregate: checkpoints must be strictly increasing");
    }
  }
  AggregateCurve curve;
  curve.iterations = iterations;
  curve.trials = errors.size();
  const double t = static_cast<double>(errors.size());
  const double q = ci_quantile(errors.size());
  for (std::size_t c = 0; c < iterations.size(); ++c) {
    double sum = 0.0;
    for (const auto& trial : errors) {
      if (trial.size() != iterations.size()) {
        throw std::invalid_argument("aggregate: trial series length differs from checkpoints");
      }
      sum += trial[c];
    }
    const double mean = errors.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / t;
    double half = std::numeric_limits<double>::quiet_NaN();
    if (errors.size() >= 2) {
      double ss = 0.0;
      for (const auto& trial : errors) ss += (trial[c] - mean) * (trial[c] - mean);
      half = q * std::sqrt(ss / (t - 1.0)) / std::sqrt(t);
    }
    curve.mean.push_back(mean);
    curve.half_width.push_back(half);
  }
  return curve;
}

AggregateCurve aggregate_trial_files(const std::vector<std::filesystem::path>& files) {
  std::vector<std::size_t> iterations;
  std::vector<std::vector<double>> errors;
  for (const auto& f : files) {
    const auto rows = read_trial_csv(f);
    std::vector<std::size_t> its;
    std::vector<double> errs;
    for (const auto& r : rows) {
      its.push_back(r.iteration);
      errs.push_back(r.error);
    }
    if (errors.empty()) {
      iterations = its;
    } else if (its != iterations) {
      throw std::runtime_error(fmt::format("'{}': checkpoints differ from the first file", f.string()));
    }
    errors.push_back(std::move(errs));
  }
  return aggregate(iterations, errors);
}

std::vector<std::size_t> checkpoint_iterations(std::size_t N, std::size_t stride) {
  std::vector<std::size_t> out;
  if (stride > 0) {
    for (std::size_t k = stride; k <= N; k += stride) out.push_back(k);
  }
  if (out.empty() || out.back() != N) out.push_back(N);
  return out;
}

namespace {

struct TrialOutput {
  bool ok = false;
  std::string error;
  std::vector<double> errors;
};

struct Job {
  std::size_t method;
  std::size_t trial;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  const auto log = [&](const std::string& line) {
    if (options.log) options.log(line);
  };

  ExperimentResult result;
  result.output_dir = !options.output_dir.empty() ? options.output_dir
                      : !cfg.output_dir.empty()   ? std::filesystem::path(cfg.output_dir)
                                                  : std::filesystem::path("zospg_out");
  std::filesystem::create_directories(result.output_dir);

  std::vector<MethodPlan> plans;
  for (const auto& m : cfg.methods) plans.push_back(plan_method(cfg, m));
  const std::vector<std::size_t> checkpoints = checkpoint_iterations(cfg.iterations, cfg.stride);

  std::vector<Job> jobs;
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    std::filesystem::create_directories(result.output_dir / cfg.methods[m].key);
    for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({m, t});
  }
  std::vector<TrialOutput> outputs(jobs.size());

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      const auto [m, t] = jobs[j];
      const MethodSpec& method = cfg.methods[m];
      const MethodPlan& plan = plans[m];
      RunConfig run = plan.run;
      run.seed = trial_seed(cfg.seed, m, t);
      TrialOutput& out = outputs[j];
      try {
        const Trace trace = method.regularized
                                ? run_regularized(run, plan.objective, cfg.set, cfg.noise, cfg.x0,
                                                  method.eps, method.radius_R)
                                : run_zospg(run, plan.kernel, plan.objective, cfg.set, cfg.noise, cfg.x0);
        std::vector<TrialRow> rows;
        for (const auto& c : trace.checkpoints) {
          rows.push_back({c.iteration, c.error, c.queries});
          out.errors.push_back(c.error);
        }
        write_trial_csv(result.output_dir / method.key / fmt::format("trial_{:04d}.csv", t), rows);
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
        std::lock_guard lock(log_mutex);
        log(fmt::format("[{}] trial {} aborted: {}", method.key, t, e.what()));
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, jobs.size()));
  log(fmt::format("running {} methods x {} trials x {} iterations on {} worker(s)",
                  cfg.methods.size(), cfg.trials, cfg.iterations, workers));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  // Single-writer reduction, in config order.
  std::vector<PlotSeries> series;
  std::ofstream summary(result.output_dir / "summary.csv", std::ios::binary | std::ios::trunc);
  summary << "key,label,beta,trials,completed,status,final_iteration,final_mean,final_ci_half\n";
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    const MethodSpec& method = cfg.methods[m];
    const MethodPlan& plan = plans[m];
    MethodOutcome outcome;
    outcome.method = method;
    std::vector<std::vector<double>> errors;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].method != m) continue;
      if (outputs[j].ok) {
        errors.push_back(outputs[j].errors);
      } else {
        ++outcome.failed;
        outcome.failures.push_back(fmt::format("trial {}: {}", jobs[j].trial, outputs[j].error));
      }
    }
    outcome.curve = aggregate(checkpoints, errors);
    outcome.curve.key = method.key;
    outcome.curve.label = method.label;
    write_aggregate_csv(result.output_dir / (method.key + "_aggregate.csv"), outcome.curve.rows());

    if (!method.regularized) {
      std::vector<BoundRow> rows;
      for (std::size_t k : checkpoints) {
        const double b = theoretical_bound(plan.run, plan.kernel, plan.objective.dim, plan.G, k);
        outcome.bound.push_back(b);
        rows.push_back({k, b});
      }
      write_bound_csv(result.output_dir / (method.key + "_bound.csv"), rows);
    }

    const std::size_t last = checkpoints.size() - 1;
    summary << method.key << ',' << method.label << ',' << format_double(method.beta) << ','
            << cfg.trials << ',' << errors.size() << ','
            << (outcome.complete() ? "complete" : "incomplete") << ',' << checkpoints[last] << ','
            << format_double(outcome.curve.mean[last]) << ','
            << format_double(outcome.curve.half_width[last]) << '\n';
    log(fmt::format("[{}] {}: mean error at N = {}: {:.4g} ({} of {} trials{})", method.key,
                    method.label, checkpoints[last], outcome.curve.mean[last], errors.size(),
                    cfg.trials, outcome.complete() ? "" : ", INCOMPLETE"));

    series.push_back(PlotSeries::from_curve(outcome.curve));
    result.methods.push_back(std::move(outcome));
  }

  PlotOptions plot_options;
  plot_options.title = fmt::format("{}: optimization error of the averaged iterate", cfg.name);
  plot_options.caption = fmt::format("problem {}, noise {}, {} trials, mean and 0.95 CI",
                                     cfg.problem.id, cfg.noise.describe(), cfg.trials);
  result.plot = result.output_dir / "errors.svg";
  for (const auto& warning : write_svg(result.plot, series, plot_options)) log(warning);

  std::vector<PlotSeries> with_bounds = series;
  for (const auto& outcome : result.methods) {
    if (outcome.bound.empty()) continue;
    std::vector<double> x(outcome.curve.iterations.begin(), outcome.curve.iterations.end());
    with_bounds.push_back(PlotSeries::overlay(outcome.method.label + " bound", x, outcome.bound));
  }
  if (with_bounds.size() > series.size()) {
    result.plot_with_bounds = result.output_dir / "errors_bounds.svg";
    for (const auto& warning : write_svg(result.plot_with_bounds, with_bounds, plot_options)) log(warning);
  }
  return result;
}

namespace {

std::string key_from_aggregate(const std::filesystem::path& file) {
  const std::string stem = file.stem().string();
  const std::string suffix = "_aggregate";
  if (stem.size() > suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return stem.substr(0, stem.size() - suffix.size());
  }
  return stem;
}

std::string label_from_summary(const std::filesystem::path& dir, const std::string& key) {
  std::ifstream in(dir / "summary.csv");
  std::string line;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    if (a == std::string::npos || line.compare(0, a, key) != 0 || a != key.size()) continue;
    const auto b = line.find(',', a + 1);
    return line.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
  }
  return key;
}

}  // namespace

std::vector<std::string> plot_aggregate_files(const std::vector<std::filesystem::path>& files,
                                              bool with_bounds, const std::filesystem::path& out) {
  if (files.empty()) throw std::invalid_argument("plot: no aggregate files given");
  std::vector<PlotSeries> curves, overlays;
  for (const auto& file : files) {
    const auto rows = read_aggregate_csv(file);
    const std::string key = key_from_aggregate(file);
    const std::filesystem::path dir = file.parent_path();
    AggregateCurve curve;
    curve.key = key;
    curve.label = label_from_summary(dir, key);
    for (const auto& r : rows) {
      curve.iterations.push_back(r.iteration);
      curve.mean.push_back(r.mean);
      curve.half_width.push_back(r.ci_high - r.mean);
    }
    curves.push_back(PlotSeries::from_curve(curve));
    const std::filesystem::path bound_file = dir / (key + "_bound.csv");
    if (with_bounds && std::filesystem::exists(bound_file)) {
      std::vector<double> x, y;
      for (const auto& r : read_bound_csv(bound_file)) {
        x.push_back(static_cast<double>(r.iteration));
        y.push_back(r.bound);
      }
      overlays.push_back(PlotSeries::overlay(curve.label + " bound", x, y));
    }
  }
  curves.insert(curves.end(), overlays.begin(), overlays.end());
  PlotOptions options;
  options.title = "optimization error of the averaged iterate";
  options.caption = "mean and 0.95 CI per method";
  return write_svg(out, curves, options);
}

}  // namespace zospg
