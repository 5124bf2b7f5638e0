#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zospg/geometry.hpp"
#include "zospg/kernel.hpp"
#include "zospg/oracle.hpp"
#include "zospg/types.hpp"

namespace zospg {

/// Tunables of one zeroth-order projected-gradient run.
struct RunConfig {
  double beta = 3.0;        ///< smoothness order, >= 2 (2 is the linear-kernel baseline)
  double gamma = 1.0;       ///< strong-convexity modulus used in the step size
  double sigma = 0.0;       ///< noise level used in the smoothing schedule
  double holder_L = 1.0;    ///< Hoelder constant used in the smoothing schedule
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  /// Replaces the smoothing-radius coefficient; required when sigma == 0.
  std::optional<double> tau_override;
  double c_star = 9.0;      ///< second-moment constant in the error bound
  /// Error is recorded every `checkpoint_stride` iterations and at the last
  /// one. 0 records only the last iteration.
  std::size_t checkpoint_stride = 0;
  /// Keep every k-th iterate in the trace (0 keeps none).
  std::size_t keep_iterates_every = 0;
};

/// Throws ConfigError on inadmissible values.
void validate(const RunConfig& cfg);

struct Checkpoint {
  std::size_t iteration;
  double error;          ///< f(x̄_k) - f*
  double iterate_error;  ///< f(x_k) - f*
  std::uint64_t queries;
};

struct Trace {
  std::vector<Checkpoint> checkpoints;
  std::vector<std::pair<std::size_t, Vector>> iterates;
  Vector average;          ///< x̄_N
  Vector last;             ///< x_N
  std::uint64_t queries = 0;
  double best_iterate_error = 0.0;  ///< min over checkpoints of f(x_k) - f*
  double tau_first = 0.0;
  double wall_seconds = 0.0;

  /// Equality ignores wall-clock time.
  bool same_result(const Trace& other) const;
};

/// Coefficient of k^{-1/(2 beta)} in the smoothing radius: the override if
/// set, otherwise (3 kappa sigma^2 n / (2 (beta-1) (kappa_beta L)^2))^{1/(2 beta)}.
/// Throws ConfigError when sigma == 0 and no override is given.
double tau_coefficient(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n);
double tau_schedule(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n,
                    std::size_t k);

/// 2 / (gamma k). Throws ConfigError when gamma <= 0.
double alpha_schedule(const RunConfig& cfg, std::size_t k);

/// n / (2 tau) * (y - y') * K(r) * e, written into `out`.
void gradient_estimate(double tau, double y, double y_prime, const Vector& e, double kernel_r,
                       Vector& out);
Vector gradient_estimate(std::size_t n, double tau, double y, double y_prime, const Direction& e,
                         double kernel_r);

/// Runs the iteration from x0 for cfg.iterations steps. Direction draws and
/// noise draws use separate substreams of cfg.seed. Query points are not
/// projected; the objective's domain must cover the set inflated by tau_1.
Trace run_zospg(const RunConfig& cfg, const KernelSpec& kernel, const Objective& obj,
                const FeasibleSet& set, const NoiseModel& noise, const Vector& x0);
/// Builds the kernel from cfg.beta.
Trace run_zospg(const RunConfig& cfg, const Objective& obj, const FeasibleSet& set,
                const NoiseModel& noise, const Vector& x0);

/// eps / R^2.
double regularization_gamma(double eps, double R);

/// Runs on f + gamma/2 ||x - x0||^2 with gamma = eps / R^2 (which also sets
/// cfg.gamma). Errors in the trace are measured on the original f.
Trace run_regularized(RunConfig cfg, const Objective& obj, const FeasibleSet& set,
                      const NoiseModel& noise, const Vector& x0, double eps, double R);

struct BoundConstants {
  double A1;  ///< 3 beta (kappa sigma^2)^{(beta-1)/beta} (kappa_beta L)^{2/beta}
  double A2;  ///< c* kappa G^2
};
BoundConstants bound_constants(const RunConfig& cfg, const KernelSpec& kernel, double G);

/// (1/gamma) (n^{2-1/beta} A1 / N^{(beta-1)/beta} + A2 n (1 + ln N) / N).
double theoretical_bound(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n,
                         double G, std::size_t N);

/// max over N in [1, 1e12] of (1 + ln N) / N^{rho/(rho+1)}.
double c_prime(double rho);

/// Iterations sufficient for error eps on a convex problem through the
/// regularized reduction. When `c_prime_value` is empty it is computed from rho.
double n_epsilon_real(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n, double G,
                      double eps, double R, double rho = 0.1,
                      std::optional<double> c_prime_value = std::nullopt);
std::uint64_t n_epsilon(const RunConfig& cfg, const KernelSpec& kernel, std::size_t n, double G,
                        double eps, double R, double rho = 0.1,
                        std::optional<double> c_prime_value = std::nullopt);

}  // namespace zospg
