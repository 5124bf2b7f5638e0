#include "zospg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zospg/quadrature.hpp"

namespace zospg {

double legendre(int m, double r) {
  if (m < 0) throw std::invalid_argument("legendre: negative order");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = r;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0) * r * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_deriv_at_zero(int m) {
  if (m < 0) throw std::invalid_argument("legendre_deriv_at_zero: negative order");
  if (m % 2 == 0) return 0.0;
  // L_m'(0) = m L_{m-1}(0), and L_{k+1}(0) = -k/(k+1) L_{k-1}(0).
  double at_zero = 1.0;  // L_0(0)
  for (int k = 1; k + 1 <= m - 1; k += 2) {
    at_zero *= -static_cast<double>(k) / (k + 1.0);
  }
  return std::sqrt(2.0 * m + 1.0) * m * at_zero;
}

int smoothness_order(double beta) {
  const double floor_beta = std::floor(beta);
  return floor_beta == beta ? static_cast<int>(beta) - 1 : static_cast<int>(floor_beta);
}

KernelSpec::KernelSpec(double beta, std::vector<double> coefficients, int quadrature_points)
    : beta_(beta), coefficients_(std::move(coefficients)), quadrature_points_(quadrature_points) {}

KernelSpec KernelSpec::from_coefficients(double beta, std::vector<double> coefficients,
                                         int quadrature_points) {
  if (coefficients.empty()) {
    throw std::invalid_argument("KernelSpec: empty coefficient list");
  }
  const int l = static_cast<int>(coefficients.size()) - 1;
  const int points = std::max(quadrature_points > 0 ? quadrature_points : 0, 2 * l + 8);
  KernelSpec spec(beta, std::move(coefficients), points);
  spec.constants_ = kernel_constants(spec);
  return spec;
}

double KernelSpec::operator()(double r) const {
  double prev = 1.0;
  double cur = r;
  double sum = coefficients_[0];
  for (int m = 1; m < static_cast<int>(coefficients_.size()); ++m) {
    if (m > 1) {
      const double next = ((2.0 * m - 1.0) * r * cur - (m - 1.0) * prev) / m;
      prev = cur;
      cur = next;
    }
    if (coefficients_[m] != 0.0) {
      sum += coefficients_[m] * std::sqrt(2.0 * m + 1.0) * cur;
    }
  }
  return sum;
}

KernelSpec build_kernel(double beta, int quadrature_order) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("build_kernel: beta must be a finite number > 1, got " +
                                std::to_string(beta));
  }
  const int l = smoothness_order(beta);
  std::vector<double> coefficients(l + 1);
  for (int m = 0; m <= l; ++m) coefficients[m] = legendre_deriv_at_zero(m);
  return KernelSpec::from_coefficients(beta, std::move(coefficients), quadrature_order);
}

double eval_kernel(const KernelSpec& spec, double r) { return spec(r); }

double kernel_moment(const KernelSpec& spec, int j) {
  if (j < 0) throw std::invalid_argument("kernel_moment: negative power");
  const int points = std::max(spec.quadrature_points(), (spec.order() + j) / 2 + 1);
  const GaussLegendreRule rule = gauss_legendre(points);
  return 0.5 * rule.integrate([&](double r) { return std::pow(r, j) * spec(r); });
}

std::vector<double> kernel_positive_roots(const KernelSpec& spec) {
  constexpr int kGrid = 4096;
  std::vector<double> roots;
  double a = 1.0 / kGrid;
  double fa = spec(a);
  for (int i = 2; i <= kGrid; ++i) {
    const double b = static_cast<double>(i) / kGrid;
    const double fb = spec(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a;
      double hi = b;
      double flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = spec(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

KernelConstants kernel_constants(const KernelSpec& spec) {
  KernelConstants out;
  // K^2 is a polynomial of degree 2l.
  const GaussLegendreRule rule = gauss_legendre(std::max(spec.quadrature_points(), spec.order() + 1));
  out.kappa = 0.5 * rule.integrate([&](double r) {
    const double k = spec(r);
    return k * k;
  });

  // (1/2) * integral over [-1, 1] of |u|^beta |K(u)|, split at 0 and at every
  // sign change of K so that each piece is smooth.
  std::vector<double> breaks{-1.0, 0.0, 1.0};
  for (double root : kernel_positive_roots(spec)) {
    breaks.push_back(root);
    breaks.push_back(-root);
  }
  std::sort(breaks.begin(), breaks.end());
  const double beta = spec.beta();
  out.kappa_beta = 0.5 * integrate_adaptive(breaks, [&](double u) {
    return std::pow(std::abs(u), beta) * std::abs(spec(u));
  });
  return out;
}

}  // namespace zospg
