#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zospg/geometry.hpp"
#include "zospg/kernel.hpp"

namespace zospg {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::size_t failures() const;
  /// One "PASS|FAIL  name  detail" line per check.
  std::string table() const;
};

/// Smoothness orders exercised by the suite.
const std::vector<double>& tested_betas();

/// Printed closed forms for beta in {3, 5, 7}. Throws std::invalid_argument otherwise.
double closed_form_kernel(double beta, double r);

CheckResult check_kernel_moments(const KernelSpec& kernel, double tol = 1e-10);
CheckResult check_closed_form(double beta, double tol = 1e-10);
CheckResult check_kappa_beta_bound(const KernelSpec& kernel);
CheckResult check_kappa_bound(const KernelSpec& kernel);
/// Membership, idempotence, non-expansiveness and the obtuse-angle condition.
CheckResult check_projection(const FeasibleSet& set, std::size_t samples, std::uint64_t seed);
/// Unit norm, E[e] = 0, E[e e^T] = I/n, E[r] = 0, E[r^2] = 1/3, within 5 standard errors.
CheckResult check_sampling(std::size_t n, std::size_t draws, std::uint64_t seed);
/// Noise-free quadratic, beta = 3 kernel, n = 3: MC mean within 4 SE of the gradient.
CheckResult check_estimator_unbiased(std::size_t draws, std::uint64_t seed);

/// Log-log slope of the bias norm against tau on the quartic, beta = 3.
double bias_slope(const std::vector<double>& taus, std::size_t frames, std::uint64_t seed);
CheckResult check_bias_slope(std::size_t frames, std::uint64_t seed);

/// Empirical E||g||^2 against kappa (c* n G^2 + 3 (n sigma)^2 / (2 tau^2)) over
/// the test suite and tau in [0.01, 0.5].
CheckResult check_second_moment(std::size_t draws, std::uint64_t seed);

/// Runs every check above; `quick` shrinks Monte-Carlo sizes.
VerifyReport verify_suite(bool quick, const std::function<void(const CheckResult&)>& progress = {});

}  // namespace zospg
