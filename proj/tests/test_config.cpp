#include <doctest.h>

#include <string>

#include "zospg/config.hpp"

using namespace zospg;

namespace {

const std::string kMinimal = R"(
[experiment]
trials = 3
iterations = 500
stride = 100

[problem]
id = "scaled_quadratic"
holder_L = 0.01

[method.b3]
beta = 3
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "test.toml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("bundled figure2 config") {
  const ExperimentConfig cfg = load_config(ZOSPG_SOURCE_DIR "/configs/figure2.toml");
  CHECK(cfg.problem.id == "scaled_quadratic");
  CHECK(make_objective(cfg.problem).dim == 3);
  CHECK(cfg.x0.norm() == doctest::Approx(0.5));
  CHECK(cfg.set.outer_radius() == doctest::Approx(1.0));
  CHECK(cfg.problem.holder_L.value() == 0.01);
  CHECK(cfg.noise.sigma_effective() == 0.01);
  CHECK(cfg.trials == 100);
  CHECK(cfg.iterations == 100000);
  REQUIRE(cfg.methods.size() == 3);
  CHECK(cfg.methods[0].beta == 2.0);
  CHECK(cfg.methods[0].label == kBaselineLabel);
  CHECK(cfg.methods[1].beta == 3.0);
  CHECK(cfg.methods[2].beta == 5.0);
}

TEST_CASE("bundled convex config") {
  const ExperimentConfig cfg = load_config(ZOSPG_SOURCE_DIR "/configs/convex_quartic.toml");
  REQUIRE(cfg.methods.size() == 1);
  CHECK(cfg.methods[0].regularized);
  const MethodPlan plan = plan_method(cfg, cfg.methods[0]);
  CHECK(plan.reg_gamma == doctest::Approx(0.2));
  CHECK(plan.run.gamma == doctest::Approx(0.2));
}

TEST_CASE("defaults") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  CHECK(cfg.x0[0] == 0.5);
  CHECK(cfg.noise.describe() == "gaussian(sigma=0.01)");
  CHECK(cfg.seed == 20201101);
  CHECK(cfg.methods[0].label == "beta=3");
}

TEST_CASE("validation errors carry a diagnostic") {
  std::string text = kMinimal;
  text.replace(text.find("trials = 3"), 10, "trials = 0");
  CHECK(contains(error_of(text), "trials"));

  text = kMinimal;
  text.replace(text.find("beta = 3"), 8, "beta = 1.5");
  const std::string beta_error = error_of(text);
  CHECK(contains(beta_error, "test.toml:"));
  CHECK(contains(beta_error, "beta"));
  CHECK(contains(beta_error, "1.5"));

  text = kMinimal;
  text.replace(text.find("\"scaled_quadratic\""), 18, "\"rosenbrock\"");
  CHECK(contains(error_of(text), "unknown problem 'rosenbrock'"));

  CHECK(contains(error_of(kMinimal + "\n[noise]\nkind = \"none\"\n"), "tau"));
  CHECK(error_of(kMinimal + "\n[noise]\nkind = \"none\"\n[method.b5]\nbeta = 5\ntau = 0.1\n") != "");
}

TEST_CASE("syntax errors name the line") {
  CHECK(contains(error_of(kMinimal + "bogus line\n"), "test.toml:13"));
  CHECK(contains(error_of(kMinimal + "colour = 3\n"), "colour"));
  CHECK(contains(error_of(kMinimal + "[surprise]\n"), "unknown section [surprise]"));
  CHECK(contains(error_of("[experiment]\ntrials = \"many\n"), "unterminated"));
  CHECK(contains(error_of("[experiment]\ntrials = 2\ntrials = 3\n"), "duplicate key"));
  CHECK(contains(error_of("[experiment]\ntrials = 3\n"), "method"));
}

TEST_CASE("geometry checks") {
  CHECK(contains(error_of(kMinimal + "[start]\npoint = [2, 0, 0]\n"), "not in the feasible set"));
  CHECK(contains(error_of(kMinimal + "[start]\npoint = [0, 0]\n"), "dimension"));
  CHECK(contains(error_of(kMinimal + "[set]\nkind = \"ball\"\ncenter = [5, 5, 5]\nradius = 1\n"
                                     "[start]\npoint = [5, 5, 5.5]\n"),
                 "minimiser"));
  const ExperimentConfig box = parse_config(
      kMinimal + "[set]\nkind = \"box\"\nlower = [-1, -1, -1]\nupper = [1, 1, 1]\n");
  CHECK(box.set.outer_radius() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("labels and method names") {
  CHECK(contains(error_of(kMinimal + "label = \"a, b\"\n"), "label"));
  CHECK(contains(error_of(kMinimal + "[method.b3]\nbeta = 3\n"), "duplicate"));
  CHECK(contains(error_of(kMinimal + "[method.]\nbeta = 3\n"), "method name"));
}

TEST_CASE("regularized methods need eps and a large enough R") {
  const std::string convex = R"(
[problem]
id = "convex_quartic"
dim = 3
[start]
point = [1, 0, 0]
[method.r]
beta = 3
mode = "regularized"
eps = 0.2
)";
  CHECK(contains(error_of(convex), "R"));
  CHECK(contains(error_of(convex + "R = 0.5\n"), "below"));
  CHECK(error_of(convex + "R = 1\n").empty());
  CHECK(contains(error_of(R"(
[problem]
id = "convex_quartic"
[method.s]
beta = 3
)"), "not strongly convex"));
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 1, 0) != trial_seed(1, 0, 0));
  CHECK(trial_seed(2, 0, 0) != trial_seed(1, 0, 0));
}

TEST_CASE("bound report") {
  const std::string report = bound_report(load_config(ZOSPG_SOURCE_DIR "/configs/convex_quartic.toml"));
  CHECK(contains(report, "N(eps)"));
  CHECK(contains(report, "kappa = 3"));
}
