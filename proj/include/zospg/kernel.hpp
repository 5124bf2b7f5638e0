#pragma once

#include <span>
#include <vector>

namespace zospg {

/// Legendre polynomial L_m(r) by the Bonnet recurrence.
double legendre(int m, double r);

/// d/dr [sqrt(2m+1) L_m(r)] at r = 0. Zero for even m.
double legendre_deriv_at_zero(int m);

/// Largest integer strictly below beta.
int smoothness_order(double beta);

struct KernelConstants {
  double kappa_beta = 0.0;  ///< E[|r|^beta |K(r)|], r ~ U[-1, 1]
  double kappa = 0.0;       ///< E[K(r)^2]
};

/// Smoothing kernel K_beta(r) = sum_m c_m p_m(r), p_m = sqrt(2m+1) L_m,
/// c_m = p_m'(0), m = 0..l. Moments are taken against the uniform density
/// on [-1, 1], so E[K] = 0, E[rK] = 1 and E[r^j K] = 0 for 2 <= j <= l.
///
/// Immutable once built.
class KernelSpec {
 public:
  /// Wraps explicit coefficients (indexed by m, even entries included) and
  /// computes the constants. Used for the Legendre construction and for
  /// test fixtures that perturb it.
  static KernelSpec from_coefficients(double beta, std::vector<double> coefficients,
                                      int quadrature_points = 0);

  double beta() const { return beta_; }
  int order() const { return static_cast<int>(coefficients_.size()) - 1; }
  std::span<const double> coefficients() const { return coefficients_; }
  double kappa_beta() const { return constants_.kappa_beta; }
  double kappa() const { return constants_.kappa; }
  const KernelConstants& constants() const { return constants_; }
  /// Gauss-Legendre points used for polynomial moments.
  int quadrature_points() const { return quadrature_points_; }

  double operator()(double r) const;

 private:
  KernelSpec(double beta, std::vector<double> coefficients, int quadrature_points);

  double beta_;
  std::vector<double> coefficients_;
  int quadrature_points_;
  KernelConstants constants_;
};

/// Builds K_beta. `quadrature_order` <= 0 picks 2l + 8 points, which is
/// exact for every polynomial moment the kernel module evaluates.
/// Throws std::invalid_argument when beta <= 1.
KernelSpec build_kernel(double beta, int quadrature_order = 0);

double eval_kernel(const KernelSpec& spec, double r);

/// E[r^j K(r)] for r ~ U[-1, 1] by Gauss-Legendre quadrature.
double kernel_moment(const KernelSpec& spec, int j);

/// kappa_beta and kappa for the kernel. The integrand of kappa_beta is
/// only piecewise smooth, so the domain is split at 0 and at the kernel's
/// sign changes before adaptive quadrature.
KernelConstants kernel_constants(const KernelSpec& spec);

/// Sign changes of K on (0, 1), located by bisection on a fine grid.
std::vector<double> kernel_positive_roots(const KernelSpec& spec);

}  // namespace zospg
