#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zospg/config.hpp"
#include "zospg/experiment.hpp"
#include "zospg/plot.hpp"

using namespace zospg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("zospg_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_experiment() {
  return parse_config(R"(
[experiment]
name = "small"
trials = 4
iterations = 1000
stride = 250
seed = 3

[problem]
id = "scaled_quadratic"
holder_L = 0.01

[method.b2]
beta = 2

[method.b3]
beta = 3
)");
}

}  // namespace

TEST_CASE("confidence quantile") {
  CHECK(std::isnan(ci_quantile(1)));
  CHECK(ci_quantile(2) == doctest::Approx(12.7062047));
  CHECK(ci_quantile(10) == doctest::Approx(2.2621572));
  CHECK(ci_quantile(29) == doctest::Approx(2.0484071));
  CHECK(ci_quantile(30) == 1.96);
  CHECK(ci_quantile(100) == 1.96);
}

TEST_CASE("aggregate statistics") {
  const AggregateCurve c = aggregate({10, 20}, {{1.0, 2.0}, {3.0, 4.0}, {5.0, 9.0}});
  CHECK(c.trials == 3);
  CHECK(c.mean[0] == doctest::Approx(3.0));
  CHECK(c.mean[1] == doctest::Approx(5.0));
  // sd = 2, t_{0.975, 2} = 4.302653
  CHECK(c.half_width[0] == doctest::Approx(4.3026527 * 2.0 / std::sqrt(3.0)));
  CHECK(c.half_width[1] >= 0.0);
  const auto rows = c.rows();
  CHECK(rows[0].ci_low == doctest::Approx(3.0 - c.half_width[0]));

  const AggregateCurve single = aggregate({10}, {{0.25}});
  CHECK(single.mean[0] == 0.25);
  CHECK(std::isnan(single.half_width[0]));
  CHECK_THROWS_AS(aggregate({20, 10}, {{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate({10, 20}, {{1.0}}), std::invalid_argument);
}

TEST_CASE("checkpoint schedule") {
  CHECK(checkpoint_iterations(1000, 250) == std::vector<std::size_t>{250, 500, 750, 1000});
  CHECK(checkpoint_iterations(1000, 300) == std::vector<std::size_t>{300, 600, 900, 1000});
  CHECK(checkpoint_iterations(1000, 0) == std::vector<std::size_t>{1000});
}

TEST_CASE("csv number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123, -2.5e-7}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "NA");
  CHECK(std::isnan(parse_double("NA")));
  CHECK_THROWS(parse_double("1.0x"));
}

TEST_CASE("experiment writes consistent files") {
  const fs::path out = scratch("run");
  RunOptions options;
  options.output_dir = out;
  const ExperimentResult res = run_experiment(small_experiment(), options);
  REQUIRE(res.methods.size() == 2);
  for (const auto& m : res.methods) {
    CHECK(m.complete());
    CHECK(m.curve.trials == 4);
    CHECK(m.bound.size() == 4);
  }
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(fs::exists(out / "errors.svg"));
  CHECK(fs::exists(out / "errors_bounds.svg"));
  CHECK(fs::exists(out / "b2_bound.csv"));

  // Aggregate mean equals the plain mean of the per-trial files.
  std::vector<fs::path> trials;
  for (int t = 0; t < 4; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "trial_%04d.csv", t);
    trials.push_back(out / "b3" / name);
  }
  const auto agg = read_aggregate_csv(out / "b3_aggregate.csv");
  std::vector<std::vector<TrialRow>> per_trial;
  for (const auto& f : trials) per_trial.push_back(read_trial_csv(f));
  for (std::size_t c = 0; c < agg.size(); ++c) {
    double sum = 0.0;
    for (const auto& rows : per_trial) sum += rows[c].error;
    CHECK(std::abs(agg[c].mean - sum / 4.0) <= 1e-12 * std::abs(agg[c].mean));
    CHECK(per_trial[0][c].queries == 2 * agg[c].iteration);
  }

  // Re-aggregating the parsed trial files reproduces the aggregate file byte for byte.
  const fs::path again = out / "again.csv";
  write_aggregate_csv(again, aggregate_trial_files(trials).rows());
  CHECK(slurp(again) == slurp(out / "b3_aggregate.csv"));

  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.find("b2,linear-kernel baseline beta=2,2,4,4,complete,1000,") != std::string::npos);
}

TEST_CASE("runs are deterministic across worker counts") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  RunOptions oa, ob;
  oa.output_dir = a;
  ob.output_dir = b;
  ob.workers = 3;
  run_experiment(small_experiment(), oa);
  run_experiment(small_experiment(), ob);
  for (const auto* f : {"b2_aggregate.csv", "b3_aggregate.csv", "summary.csv", "b3/trial_0002.csv"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  ExperimentConfig other = small_experiment();
  other.seed = 4;
  const fs::path c = scratch("det_c");
  RunOptions oc;
  oc.output_dir = c;
  run_experiment(other, oc);
  CHECK(slurp(a / "b3_aggregate.csv") != slurp(c / "b3_aggregate.csv"));
}

TEST_CASE("aborted trials mark the method incomplete") {
  ExperimentConfig cfg = small_experiment();
  cfg.methods[1].tau_override = 1e300;  // queries overflow to inf
  const fs::path out = scratch("abort");
  RunOptions options;
  options.output_dir = out;
  std::vector<std::string> log;
  options.log = [&](const std::string& line) { log.push_back(line); };
  const ExperimentResult res = run_experiment(cfg, options);
  CHECK(res.methods[0].complete());
  CHECK_FALSE(res.methods[1].complete());
  CHECK(res.methods[1].failed == 4);
  CHECK(slurp(out / "summary.csv").find("b3,beta=3,3,4,0,incomplete") != std::string::npos);
}

TEST_CASE("plot legend, ticks and clipping") {
  std::vector<PlotSeries> series;
  for (int m = 0; m < 3; ++m) {
    PlotSeries s;
    s.label = "method " + std::to_string(m);
    s.x = {1, 10, 100, 1000};
    s.y = {1.0, 1e-1, 1e-2, 1e-4};
    series.push_back(s);
  }
  series.push_back(PlotSeries::overlay("bound", {1, 1000}, {1.0, 1e-3}));
  const RenderedPlot plot = render_svg(series);
  CHECK(plot.legend_entries == 4);
  CHECK(plot.warnings.empty());
  CHECK(plot.svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(plot.svg.find("stroke-dasharray") != std::string::npos);
  for (const char* tick : {">1e-4<", ">1e-3<", ">1e-2<", ">1e-1<", ">1e0<", ">1e3<"}) {
    CHECK(plot.svg.find(tick) != std::string::npos);
  }
  CHECK(plot.svg.find("href") == std::string::npos);

  series[0].y[2] = 0.0;
  const RenderedPlot clipped = render_svg(series);
  REQUIRE(clipped.warnings.size() == 1);
  CHECK(clipped.warnings[0].find("clipped") != std::string::npos);

  CHECK_THROWS_AS(render_svg({}), std::invalid_argument);
}

TEST_CASE("plot from aggregate files picks labels and bounds") {
  const fs::path out = scratch("plot");
  RunOptions options;
  options.output_dir = out;
  run_experiment(small_experiment(), options);
  const fs::path svg = out / "replot.svg";
  plot_aggregate_files({out / "b2_aggregate.csv", out / "b3_aggregate.csv"}, true, svg);
  const std::string text = slurp(svg);
  CHECK(text.find("linear-kernel baseline beta=2") != std::string::npos);
  CHECK(text.find("beta=3 bound") != std::string::npos);
  CHECK_THROWS(plot_aggregate_files({}, false, svg));
}
