#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zospg/geometry.hpp"
#include "zospg/kernel.hpp"
#include "zospg/optimizer.hpp"
#include "zospg/oracle.hpp"

namespace zospg {

inline constexpr const char* kBaselineLabel = "linear-kernel baseline beta=2";

struct ProblemSpec {
  std::string id = "scaled_quadratic";  ///< scaled_quadratic | quadratic | quartic | convex_quartic
  std::size_t dim = 3;
  Vector spectrum;  ///< quadratic only
  Vector linear;    ///< quadratic only
  double gamma = 1.0;          ///< quartic only
  double domain_radius = 2.0;  ///< quartics: radius behind the declared Hoelder constant
  std::optional<double> holder_L;
};

struct MethodSpec {
  std::string key;  ///< section suffix, used in file names
  std::string label;
  double beta = 3.0;
  std::optional<double> tau_override;
  std::optional<double> gamma;
  std::optional<double> holder_L;
  double c_star = 9.0;
  bool regularized = false;
  double eps = 0.0;       ///< regularized only
  double radius_R = 0.0;  ///< regularized only
  double rho = 0.1;       ///< regularized only, for N(eps)
};

struct ExperimentConfig {
  std::string name = "experiment";
  ProblemSpec problem;
  FeasibleSet set = FeasibleSet::ball(Vector::Zero(3), 1.0);
  NoiseModel noise = NoiseModel::gaussian(0.01);
  Vector x0;
  std::vector<MethodSpec> methods;
  std::size_t trials = 100;
  std::size_t iterations = 100000;
  std::size_t stride = 100;
  std::uint64_t seed = 20201101;
  std::string output_dir;  ///< empty: caller decides
  std::filesystem::path source;
};

/// Reads and validates a config file. Throws ConfigError with a line or
/// field diagnostic.
ExperimentConfig load_config(const std::filesystem::path& path);
/// Same, from text; `origin` only labels diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Checks the invariants load_config enforces; useful after programmatic edits.
void validate(const ExperimentConfig& cfg);

Objective make_objective(const ProblemSpec& spec);

/// Everything needed to run one method of an experiment.
struct MethodPlan {
  Objective objective;
  KernelSpec kernel;
  RunConfig run;  ///< seed left at 0; see trial_seed
  double tau1;
  double G;       ///< Lipschitz constant on the set inflated by tau1 (of f_gamma when regularized)
  double reg_gamma = 0.0;
};
MethodPlan plan_method(const ExperimentConfig& cfg, const MethodSpec& method);

std::uint64_t trial_seed(std::uint64_t master, std::size_t method_index, std::size_t trial);

/// Human-readable bound report for every method.
std::string bound_report(const ExperimentConfig& cfg);

}  // namespace zospg
