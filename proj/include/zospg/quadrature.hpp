#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zospg {

/// Gauss-Legendre nodes and weights on [-1, 1]. An n-point rule integrates
/// polynomials of degree 2n-1 exactly.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Integral of f over [a, b].
  template <class F>
  double integrate(F&& f, double a = -1.0, double b = 1.0) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return half * sum;
  }
};

GaussLegendreRule gauss_legendre(int points);

/// Adaptive composite Gauss-Legendre on [a, b]: a panel is accepted when the
/// 20-point estimate and the sum of its two halves agree within `tol`
/// (absolute), otherwise it is bisected, down to `max_depth` levels.
double integrate_adaptive(const std::vector<double>& breakpoints,
                          const std::function<double(double)>& f,
                          double tol = 1e-14, int max_depth = 30);

}  // namespace zospg
