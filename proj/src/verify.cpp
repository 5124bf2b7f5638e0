#include "zospg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "zospg/diagnostics.hpp"
#include "zospg/oracle.hpp"

namespace zospg {

bool VerifyReport::all_passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::string VerifyReport::table() const {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out;
  for (const auto& c : checks) {
    out += fmt::format("{}  {:<{}}  {}\n", c.passed ? "PASS" : "FAIL", c.name, width, c.detail);
  }
  out += fmt::format("{} of {} checks passed\n", checks.size() - failures(), checks.size());
  return out;
}

const std::vector<double>& tested_betas() {
  static const std::vector<double> betas{2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0};
  return betas;
}

double closed_form_kernel(double beta, double r) {
  if (beta == 3.0) return 3.0 * r;
  if (beta == 5.0) return 15.0 * r / 4.0 * (5.0 - 7.0 * r * r);
  if (beta == 7.0) {
    const double r2 = r * r;
    return 105.0 * r / 64.0 * (99.0 * r2 * r2 - 126.0 * r2 + 35.0);
  }
  throw std::invalid_argument(fmt::format("no closed form for beta = {}", beta));
}

CheckResult check_kernel_moments(const KernelSpec& kernel, double tol) {
  CheckResult res{fmt::format("kernel moments beta={}", kernel.beta()), true, {}};
  double worst = 0.0;
  for (int j = 0; j <= kernel.order(); ++j) {
    const double target = j == 1 ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(kernel_moment(kernel, j) - target));
  }
  res.passed = worst < tol;
  res.detail = fmt::format("max |E[r^j K] - delta_j1| over j <= {} = {:.3g} (tol {:g})",
                           kernel.order(), worst, tol);
  return res;
}

CheckResult check_closed_form(double beta, double tol) {
  const KernelSpec kernel = build_kernel(beta);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = -1.0 + 2.0 * i / 999.0;
    worst = std::max(worst, std::abs(kernel(r) - closed_form_kernel(beta, r)));
  }
  return {fmt::format("closed form beta={}", beta), worst < tol,
          fmt::format("max deviation on 1000 points = {:.3g} (tol {:g})", worst, tol)};
}

CheckResult check_kappa_beta_bound(const KernelSpec& kernel) {
  const double bound = 2.0 * std::sqrt(2.0) * (kernel.beta() - 1.0);
  return {fmt::format("kappa_beta bound beta={}", kernel.beta()), kernel.kappa_beta() <= bound,
          fmt::format("kappa_beta = {:.6g} <= 2 sqrt(2) (beta - 1) = {:.6g}", kernel.kappa_beta(),
                      bound)};
}

CheckResult check_kappa_bound(const KernelSpec& kernel) {
  const double bound = std::sqrt(3.0) * std::pow(kernel.beta(), 1.5);
  return {fmt::format("kappa bound beta={}", kernel.beta()), kernel.kappa() <= bound,
          fmt::format("kappa = {:.6g} <= sqrt(3) beta^1.5 = {:.6g}", kernel.kappa(), bound)};
}

CheckResult check_projection(const FeasibleSet& set, std::size_t samples, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(set.dim());
  Rng rng(seed);
  const double scale = 3.0 * std::max(1.0, set.outer_radius());
  const auto draw = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
    return v;
  };
  double worst_member = 0.0, worst_idem = 0.0, worst_expand = 0.0, worst_angle = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = draw(), y = draw();
    const Vector px = set.project(x), py = set.project(y);
    worst_member = std::max(worst_member, set.distance(px));
    worst_idem = std::max(worst_idem, (set.project(px) - px).norm());
    worst_expand = std::max(worst_expand, (px - py).norm() - (x - y).norm());
    worst_angle = std::max(worst_angle, (x - px).dot(py - px));
  }
  const double tol = 1e-12 * scale * scale;
  const bool ok = worst_member <= tol && worst_idem <= tol && worst_expand <= tol && worst_angle <= tol;
  const char* kind = std::holds_alternative<Ball>(set.shape()) ? "ball" : "box";
  return {fmt::format("projection {} n={}", kind, n), ok,
          fmt::format("dist {:.2g}, idempotence {:.2g}, expansion {:.2g}, angle {:.2g}", worst_member,
                      worst_idem, worst_expand, worst_angle)};
}

CheckResult check_sampling(std::size_t n, std::size_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const auto N = static_cast<Eigen::Index>(n);
  Direction e(n);
  Vector m1 = Vector::Zero(N);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd m2sq = Eigen::MatrixXd::Zero(N, N);
  double norm_dev = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    e.resample(rng);
    const Vector& v = e.vector();
    norm_dev = std::max(norm_dev, std::abs(v.norm() - 1.0));
    m1 += v;
    const Eigen::MatrixXd outer = v * v.transpose();
    m2 += outer;
    m2sq += outer.cwiseAbs2();
    const double r = sample_scalar(rng);
    r1 += r;
    r2 += r * r;
  }
  const double d = static_cast<double>(draws);
  // z-scores; every component of e and e e^T is bounded by 1, so var <= E[x^2].
  double worst = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    worst = std::max(worst, std::abs(m1[i] / d) / std::sqrt(1.0 / (static_cast<double>(n) * d)));
    for (Eigen::Index j = 0; j < N; ++j) {
      const double mean = m2(i, j) / d;
      const double target = i == j ? 1.0 / static_cast<double>(n) : 0.0;
      const double var = std::max(m2sq(i, j) / d - mean * mean, 1e-300);
      worst = std::max(worst, std::abs(mean - target) / std::sqrt(var / d));
    }
  }
  worst = std::max(worst, std::abs(r1 / d) / std::sqrt(1.0 / (3.0 * d)));
  const double r2_var = 1.0 / 5.0 - 1.0 / 9.0;
  worst = std::max(worst, std::abs(r2 / d - 1.0 / 3.0) / std::sqrt(r2_var / d));
  const bool ok = norm_dev < 1e-12 && worst < 5.0;
  return {fmt::format("sampling moments n={}", n), ok,
          fmt::format("max |z| = {:.3g} over {} draws, max | ||e|| - 1 | = {:.2g}", worst, draws,
                      norm_dev)};
}

CheckResult check_estimator_unbiased(std::size_t draws, std::uint64_t seed) {
  const Objective obj = diagonal_quadratic(Vector{{1.0, 3.0, 10.0}}, Vector{{0.2, -0.3, 0.5}});
  const KernelSpec kernel = build_kernel(3.0);
  const Vector x{{0.3, -0.2, 0.4}};
  const EstimatorMean est = estimator_mean_mc(obj, kernel, NoiseModel::none(), x, 0.1, draws, seed);
  const Vector grad = obj.gradient(x);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < grad.size(); ++i) {
    worst = std::max(worst, std::abs(est.mean[i] - grad[i]) / est.standard_error[i]);
  }
  return {"estimator unbiased on quadratic beta=3", worst <= 4.0,
          fmt::format("max |mean - grad| / SE = {:.3g} over {} draws (tol 4)", worst, draws)};
}

double bias_slope(const std::vector<double>& taus, std::size_t frames, std::uint64_t seed) {
  const Objective obj = quartic(3, 1.0);
  const KernelSpec kernel = build_kernel(3.0);
  const Vector x{{0.5, 0.3, -0.2}};
  std::vector<double> norms;
  for (double tau : taus) norms.push_back(estimator_bias(obj, kernel, x, tau, frames, seed).norm());
  return loglog_slope(taus, norms);
}

CheckResult check_bias_slope(std::size_t frames, std::uint64_t seed) {
  const double slope = bias_slope({0.4, 0.2, 0.1, 0.05}, frames, seed);
  return {"bias slope on quartic beta=3", std::abs(slope - 2.0) <= 0.3,
          fmt::format("slope = {:.4f}, expected 2 +- 0.3", slope)};
}

CheckResult check_second_moment(std::size_t draws, std::uint64_t seed) {
  const double sigma = 0.01;
  const NoiseModel noise = NoiseModel::gaussian(sigma);
  const KernelSpec kernel = build_kernel(3.0);
  const std::vector<double> taus{0.01, 0.03, 0.1, 0.25, 0.5};
  double worst_ratio = 0.0;
  std::string worst_at;
  std::uint64_t stream = 0;
  for (const Objective& obj : make_test_suite()) {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(obj.dim));
    x[0] = 0.5;
    for (double tau : taus) {
      const double G = obj.gradient_bound(1.0 + tau);
      const SecondMoment m =
          estimator_second_moment(obj, kernel, noise, x, tau, draws, derive_seed(seed, {stream++}));
      const double bound = second_moment_bound(kernel, obj.dim, G, sigma, tau);
      if (m.mean / bound > worst_ratio) {
        worst_ratio = m.mean / bound;
        worst_at = fmt::format("{} tau={}", obj.name, tau);
      }
    }
  }
  return {"second moment ceiling", worst_ratio <= 1.0,
          fmt::format("max E||g||^2 / bound = {:.3g} ({})", worst_ratio, worst_at)};
}

VerifyReport verify_suite(bool quick, const std::function<void(const CheckResult&)>& progress) {
  VerifyReport report;
  const auto add = [&](CheckResult c) {
    if (progress) progress(c);
    report.checks.push_back(std::move(c));
  };
  for (double beta : tested_betas()) add(check_kernel_moments(build_kernel(beta)));
  for (double beta : {3.0, 5.0, 7.0}) add(check_closed_form(beta));
  for (double beta : tested_betas()) {
    const KernelSpec k = build_kernel(beta);
    add(check_kappa_beta_bound(k));
    add(check_kappa_bound(k));
  }
  const std::size_t samples = quick ? 2000 : 20000;
  add(check_projection(FeasibleSet::ball(Vector::Zero(3), 1.0), samples, 11));
  add(check_projection(FeasibleSet::ball(Vector{{0.5, -1.0, 2.0, 0.0, 1.0}}, 0.7), samples, 12));
  add(check_projection(FeasibleSet::box(Vector{{-1.0, 0.0, -2.0}}, Vector{{1.0, 0.5, -1.0}}), samples, 13));
  add(check_sampling(3, quick ? 100000 : 1000000, 21));
  add(check_estimator_unbiased(quick ? 100000 : 1000000, 31));
  add(check_bias_slope(quick ? 50 : 400, 41));
  add(check_second_moment(quick ? 4000 : 40000, 51));
  return report;
}

}  // namespace zospg
