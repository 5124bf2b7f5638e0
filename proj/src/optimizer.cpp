#include "zospg/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

namespace zospg {

void validate(const RunConfig& cfg) {
  if (!(cfg.beta >= 2.0) || !std::isfinite(cfg.beta)) {
    throw ConfigError(fmt::format("beta must be >= 2, got {}", cfg.beta));
  }
  if (!(cfg.gamma > 0.0)) throw ConfigError(fmt::format("gamma must be > 0, got {}", cfg.gamma));
  if (!(cfg.sigma >= 0.0)) throw ConfigError(fmt::format("sigma must be >= 0, got {}", cfg.sigma));
  if (!(cfg.holder_L > 0.0)) {
    throw ConfigError(fmt::format("holder_L must be > 0, got {}", cfg.holder_L));
  }
  if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(cfg.c_star > 0.0)) throw ConfigError("c_star must be > 0");
  if (cfg.tau_override && !(*cfg.tau_override > 0.0)) {
    throw ConfigError(fmt::format("tau override must be > 0, got {}", *cfg.tau_override));
  }
}

bool Trace::same_result(const Trace& other) const {
  if (checkpoints.size() != other.checkpoints.size() || iterates.size() != other.iterates.size()) {
    return false;
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const auto& a = checkpoints[i];
    const auto& b = other.checkpoints[i];
    if (a.iteration != b.iteration || a.queries != b.queries ||
        std::memcmp(&a.error, &b.error, sizeof(double)) != 0 ||
        std::memcmp(&a.iterate_error, &b.iterate_error, sizeof(double)) != 0) {
      return false;
    }
  }
  for (std::size_t i = 0; i < iterates.size(); ++i) {
    if (iterates[i].first != other.iterates[i].first ||
        iterates[i].second != other.iterates[i].second) {
      return false;
    }
  }
  return average == other.average && last == other.last && queries == other.queries;
}

double tau_coefficient(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n) {
  if (cfg.tau_override) return *cfg.tau_override;
  if (!(cfg.sigma > 0.0)) {
    throw ConfigError("sigma = 0 makes the smoothing radius vanish; set a tau override");
  }
  const double beta = cfg.beta;
  const double kb_l = kernel.kappa_beta() * cfg.holder_L;
  const double base = 3.0 * kernel.kappa() * cfg.sigma * cfg.sigma * static_cast<double>(n) /
                      (2.0 * (beta - 1.0) * kb_l * kb_l);
  return std::pow(base, 1.0 / (2.0 * beta));
}

double tau_schedule(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n,
                    std::size_t k) {
  if (k < 1) throw std::invalid_argument("tau_schedule: k must be >= 1");
  return tau_coefficient(cfg, kernel, n) *
         std::pow(static_cast<double>(k), -1.0 / (2.0 * cfg.beta));
}

double alpha_schedule(const RunConfig& cfg, std::size_t k) {
  if (!(cfg.gamma > 0.0)) throw ConfigError("step size needs gamma > 0");
  if (k < 1) throw std::invalid_argument("alpha_schedule: k must be >= 1");
  return 2.0 / (cfg.gamma * static_cast<double>(k));
}

void gradient_estimate(double tau, double y, double y_prime, const Vector& e, double kernel_r,
                       Vector& out) {
  const double n = static_cast<double>(e.size());
  out.noalias() = (n / (2.0 * tau) * (y - y_prime) * kernel_r) * e;
}

Vector gradient_estimate(std::size_t n, double tau, double y, double y_prime, const Direction& e,
                         double kernel_r) {
  if (e.dim() != n) throw std::invalid_argument("gradient_estimate: direction dimension mismatch");
  if (!(tau > 0.0)) throw std::invalid_argument("gradient_estimate: tau must be > 0");
  Vector out(static_cast<Eigen::Index>(n));
  gradient_estimate(tau, y, y_prime, e.vector(), kernel_r, out);
  return out;
}

namespace {

Trace run_impl(const RunConfig& cfg, const KernelSpec& kernel, const Objective& queried,
               const Objective& measured, const FeasibleSet& set, const NoiseModel& noise,
               const Vector& x0) {
  validate(cfg);
  const std::size_t n = queried.dim;
  if (set.dim() != n || static_cast<std::size_t>(x0.size()) != n) {
    throw std::invalid_argument(fmt::format(
        "dimension mismatch: objective {}, set {}, start point {}", n, set.dim(), x0.size()));
  }
  if (!set.contains(x0, 1e-9)) throw std::invalid_argument("start point is not in the feasible set");

  const double tau1 = tau_coefficient(cfg, kernel, n);
  if (tau1 > queried.domain_inflation) {
    throw ConfigError(fmt::format(
        "tau_1 = {} exceeds the objective's domain inflation {}", tau1, queried.domain_inflation));
  }

  const auto started = std::chrono::steady_clock::now();
  Rng direction_rng(derive_seed(cfg.seed, {0}));
  Rng noise_rng(derive_seed(cfg.seed, {1}));
  QueryLedger ledger;

  const double fstar = measured.optimum ? measured.optimum->value
                                        : std::numeric_limits<double>::quiet_NaN();
  const double tau_exponent = -1.0 / (2.0 * cfg.beta);

  Trace trace;
  trace.tau_first = tau1;
  trace.best_iterate_error = std::numeric_limits<double>::infinity();
  Vector x = x0;
  Vector avg = Vector::Zero(static_cast<Eigen::Index>(n));
  Vector x_plus(x.size()), x_minus(x.size()), g(x.size());
  Direction e(n);

  for (std::size_t k = 1; k <= cfg.iterations; ++k) {
    avg += (x - avg) / static_cast<double>(k);

    const double kd = static_cast<double>(k);
    const double tau = tau1 * std::pow(kd, tau_exponent);
    const double alpha = 2.0 / (cfg.gamma * kd);
    const double r = sample_scalar(direction_rng);
    e.resample(direction_rng);

    x_plus.noalias() = x + (tau * r) * e.vector();
    x_minus.noalias() = x - (tau * r) * e.vector();
    const auto [y, y_prime] = noisy_pair(queried, noise, x_plus, x_minus, k, noise_rng, ledger, &set);
    if (!std::isfinite(y) || !std::isfinite(y_prime)) {
      throw RunAborted(fmt::format("non-finite oracle value at iteration {}", k));
    }

    if (cfg.keep_iterates_every > 0 && (k - 1) % cfg.keep_iterates_every == 0) {
      trace.iterates.emplace_back(k, x);
    }
    const bool checkpoint =
        k == cfg.iterations || (cfg.checkpoint_stride > 0 && k % cfg.checkpoint_stride == 0);
    if (checkpoint) {
      const double err = measured.value(avg) - fstar;
      const double it_err = measured.value(x) - fstar;
      trace.checkpoints.push_back({k, err, it_err, ledger.count});
      trace.best_iterate_error = std::min(trace.best_iterate_error, it_err);
    }

    gradient_estimate(tau, y, y_prime, e.vector(), kernel(r), g);
    x -= alpha * g;
    set.project_inplace(x);
  }

  trace.average = avg;
  trace.last = x;
  trace.queries = ledger.count;
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

}  // namespace

Trace run_zospg(const RunConfig& cfg, const KernelSpec& kernel, const Objective& obj,
                const FeasibleSet& set, const NoiseModel& noise, const Vector& x0) {
  return run_impl(cfg, kernel, obj, obj, set, noise, x0);
}

Trace run_zospg(const RunConfig& cfg, const Objective& obj, const FeasibleSet& set,
                const NoiseModel& noise, const Vector& x0) {
  return run_zospg(cfg, build_kernel(cfg.beta), obj, set, noise, x0);
}

double regularization_gamma(double eps, double R) {
  if (!(eps > 0.0)) throw ConfigError("regularization: eps must be > 0");
  if (!(R > 0.0)) throw ConfigError("regularization: R must be > 0");
  return eps / (R * R);
}

Trace run_regularized(RunConfig cfg, const Objective& obj, const FeasibleSet& set,
                      const NoiseModel& noise, const Vector& x0, double eps, double R) {
  const double gamma = regularization_gamma(eps, R);
  if (obj.optimum && (x0 - obj.optimum->point).norm() > R * (1.0 + 1e-12)) {
    throw ConfigError(fmt::format("R = {} is smaller than ||x0 - x*|| = {}", R,
                                  (x0 - obj.optimum->point).norm()));
  }
  const Objective wrapped = regularize(obj, gamma, x0);
  cfg.gamma = wrapped.gamma;
  return run_impl(cfg, build_kernel(cfg.beta), wrapped, obj, set, noise, x0);
}

BoundConstants bound_constants(const RunConfig& cfg, const KernelSpec& kernel, double G) {
  const double beta = cfg.beta;
  const double noise_part = std::pow(kernel.kappa() * cfg.sigma * cfg.sigma, (beta - 1.0) / beta);
  const double bias_part = std::pow(kernel.kappa_beta() * cfg.holder_L, 2.0 / beta);
  return {3.0 * beta * noise_part * bias_part, cfg.c_star * kernel.kappa() * G * G};
}

double theoretical_bound(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n, double G,
                         std::size_t N) {
  if (N < 1) throw std::invalid_argument("theoretical_bound: N must be >= 1");
  if (!(cfg.gamma > 0.0)) throw ConfigError("theoretical_bound: gamma must be > 0");
  const auto [A1, A2] = bound_constants(cfg, kernel, G);
  const double beta = cfg.beta;
  const double nd = static_cast<double>(n);
  const double Nd = static_cast<double>(N);
  const double noise_term = std::pow(nd, 2.0 - 1.0 / beta) * A1 / std::pow(Nd, (beta - 1.0) / beta);
  const double lipschitz_term = A2 * nd * (1.0 + std::log(Nd)) / Nd;
  return (noise_term + lipschitz_term) / cfg.gamma;
}

double c_prime(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("c_prime: rho must be > 0");
  const double slope = rho / (rho + 1.0);
  // In t = ln N: g(t) = (1 + t) exp(-slope t) on [0, ln 1e12].
  const auto neg_g = [slope](double t) { return -(1.0 + t) * std::exp(-slope * t); };
  const double hi = std::log(1e12);
  const auto [t, value] = boost::math::tools::brent_find_minima(neg_g, 0.0, hi, 52);
  (void)t;
  return std::max({-value, -neg_g(0.0), -neg_g(hi)});
}

double n_epsilon_real(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n, double G,
                      double eps, double R, double rho, std::optional<double> c_prime_value) {
  if (!(eps > 0.0)) throw std::invalid_argument("n_epsilon: eps must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("n_epsilon: rho must be > 0");
  const double cp = c_prime_value ? *c_prime_value : c_prime(rho);
  const auto [A1, A2] = bound_constants(cfg, kernel, G);
  const double beta = cfg.beta;
  const double nd = static_cast<double>(n);
  const double first = std::pow(R * std::sqrt(2.0 * A1), 2.0 * beta / (beta - 1.0)) *
                       std::pow(nd, 2.0 + 1.0 / (beta - 1.0)) /
                       std::pow(eps, 2.0 + 2.0 / (beta - 1.0));
  const double second = std::pow(R * std::sqrt(2.0 * cp * A2), 2.0 * (1.0 + rho)) *
                        std::pow(nd, 1.0 + rho) / std::pow(eps, 2.0 * (1.0 + rho));
  return std::max(first, second);
}

std::uint64_t n_epsilon(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n, double G,
                        double eps, double R, double rho, std::optional<double> c_prime_value) {
  const double value = n_epsilon_real(cfg, kernel, n, G, eps, R, rho, c_prime_value);
  if (!(value < 1.8e19)) throw std::overflow_error("n_epsilon: iteration count overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
}

}  // namespace zospg
