#include "zospg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

#include "zospg/optimizer.hpp"
#include "zospg/quadrature.hpp"

namespace zospg {

EstimatorMean estimator_mean_mc(const Objective& obj, const KernelSpec& kernel, const NoiseModel& noise,
                                const Vector& x, double tau, std::size_t draws, std::uint64_t seed) {
  if (draws < 2) throw std::invalid_argument("estimator_mean_mc: need at least two draws");
  const std::size_t n = obj.dim;
  Rng direction_rng(derive_seed(seed, {0}));
  Rng noise_rng(derive_seed(seed, {1}));
  QueryLedger ledger;
  Direction e(n);
  Vector g(static_cast<Eigen::Index>(n));
  Vector sum = Vector::Zero(g.size());
  Vector sum_sq = Vector::Zero(g.size());
  Vector xp(g.size()), xm(g.size());
  for (std::size_t i = 1; i <= draws; ++i) {
    const double r = sample_scalar(direction_rng);
    e.resample(direction_rng);
    xp.noalias() = x + (tau * r) * e.vector();
    xm.noalias() = x - (tau * r) * e.vector();
    const auto [y, yp] = noisy_pair(obj, noise, xp, xm, i, noise_rng, ledger);
    gradient_estimate(tau, y, yp, e.vector(), kernel(r), g);
    sum += g;
    sum_sq += g.cwiseAbs2();
  }
  const double m = static_cast<double>(draws);
  EstimatorMean out;
  out.mean = sum / m;
  const Vector var = ((sum_sq / m) - out.mean.cwiseAbs2()) * (m / (m - 1.0));
  out.standard_error = (var.cwiseMax(0.0) / m).cwiseSqrt();
  return out;
}

Vector estimator_bias(const Objective& obj, const KernelSpec& kernel, const Vector& x, double tau,
                      std::size_t frames, std::uint64_t seed, int r_points) {
  if (!obj.gradient) throw std::invalid_argument("estimator_bias: objective has no gradient");
  if (frames < 1) throw std::invalid_argument("estimator_bias: need at least one frame");
  const auto n = static_cast<Eigen::Index>(obj.dim);
  const GaussLegendreRule rule = gauss_legendre(r_points);
  Rng rng(derive_seed(seed, {7}));

  // E_r[(f(x + tau r e) - f(x - tau r e)) K(r)] / 2 for a fixed direction,
  // with the uniform density 1/2 folded in.
  const auto radial = [&](const Vector& e) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      acc += rule.weights[i] * (obj.value(x + (tau * r) * e) - obj.value(x - (tau * r) * e)) *
             kernel(r);
    }
    return 0.5 * acc;
  };

  Vector sum = Vector::Zero(n);
  Eigen::MatrixXd gaussian(n, n);
  for (std::size_t f = 0; f < frames; ++f) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) gaussian(i, j) = rng.normal();
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian).householderQ();
    for (Eigen::Index c = 0; c < n; ++c) {
      const Vector e = q.col(c);
      const Vector anti = -e;
      sum += radial(e) * e + radial(anti) * anti;
    }
  }
  // Each frame contributes 2n directions; g = n / (2 tau) * diff * K * e.
  const double directions = 2.0 * static_cast<double>(n) * static_cast<double>(frames);
  const Vector mean_g = (static_cast<double>(n) / (2.0 * tau)) * sum / directions;
  return mean_g - obj.gradient(x);
}

SecondMoment estimator_second_moment(const Objective& obj, const KernelSpec& kernel,
                                     const NoiseModel& noise, const Vector& x, double tau,
                                     std::size_t draws, std::uint64_t seed) {
  if (draws < 2) throw std::invalid_argument("estimator_second_moment: need at least two draws");
  const std::size_t n = obj.dim;
  Rng direction_rng(derive_seed(seed, {0}));
  Rng noise_rng(derive_seed(seed, {1}));
  QueryLedger ledger;
  Direction e(n);
  Vector g(static_cast<Eigen::Index>(n));
  Vector xp(g.size()), xm(g.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 1; i <= draws; ++i) {
    const double r = sample_scalar(direction_rng);
    e.resample(direction_rng);
    xp.noalias() = x + (tau * r) * e.vector();
    xm.noalias() = x - (tau * r) * e.vector();
    const auto [y, yp] = noisy_pair(obj, noise, xp, xm, i, noise_rng, ledger);
    gradient_estimate(tau, y, yp, e.vector(), kernel(r), g);
    const double s = g.squaredNorm();
    sum += s;
    sum_sq += s * s;
  }
  const double m = static_cast<double>(draws);
  const double mean = sum / m;
  const double var = std::max(0.0, (sum_sq / m - mean * mean) * m / (m - 1.0));
  return {mean, std::sqrt(var / m)};
}

double second_moment_bound(const KernelSpec& kernel, std::size_t n, double G, double sigma,
                           double tau, double c_star) {
  const double nd = static_cast<double>(n);
  return kernel.kappa() * (c_star * nd * G * G + 3.0 * (nd * sigma) * (nd * sigma) / (2.0 * tau * tau));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need two or more paired points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope: non-positive value");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(x.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace zospg
