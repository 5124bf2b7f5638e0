#pragma once

#include <cstdint>
#include <span>

#include "zospg/geometry.hpp"
#include "zospg/kernel.hpp"
#include "zospg/oracle.hpp"
#include "zospg/types.hpp"

namespace zospg {

struct EstimatorMean {
  Vector mean;
  Vector standard_error;  ///< per coordinate
};

/// Plain Monte-Carlo mean of the gradient estimator at a fixed point over
/// `draws` independent (r, e, noise) triples.
EstimatorMean estimator_mean_mc(const Objective& obj, const KernelSpec& kernel, const NoiseModel& noise,
                                const Vector& x, double tau, std::size_t draws, std::uint64_t seed);

/// E[g] - grad f(x) for noiseless queries. The r-expectation is done by
/// Gauss-Legendre quadrature (exact for polynomial objectives), the sphere
/// expectation by averaging over `frames` random orthonormal frames, each
/// used together with its antithetic (negated) frame. A frame's directions
/// satisfy sum q q^T = I, so the first-order term cancels exactly per frame.
/// Reusing one seed across tau values keeps the frames common.
Vector estimator_bias(const Objective& obj, const KernelSpec& kernel, const Vector& x, double tau,
                      std::size_t frames, std::uint64_t seed, int r_points = 24);

struct SecondMoment {
  double mean;
  double standard_error;
};

/// Monte-Carlo estimate of E||g||^2 at a fixed point.
SecondMoment estimator_second_moment(const Objective& obj, const KernelSpec& kernel,
                                     const NoiseModel& noise, const Vector& x, double tau,
                                     std::size_t draws, std::uint64_t seed);

/// kappa (c* n G^2 + 3 (n sigma)^2 / (2 tau^2)).
double second_moment_bound(const KernelSpec& kernel, std::size_t n, double G, double sigma,
                           double tau, double c_star = 9.0);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace zospg
