#include "zospg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zospg {

namespace {

// Returns (L_n(x), L_n'(x)).
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = gauss_legendre(20);
  return rule;
}

double adaptive_panel(const std::function<double(double)>& f, double a, double b,
                      double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel_rule().integrate(f, a, mid);
  const double right = panel_rule().integrate(f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) {
    return left + right;
  }
  return adaptive_panel(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_panel(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one point");
  }
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  if (points == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre_with_derivative(points, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

double integrate_adaptive(const std::vector<double>& breakpoints,
                          const std::function<double(double)>& f, double tol,
                          int max_depth) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate_adaptive: need at least two breakpoints");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (b <= a) continue;
    const double whole = panel_rule().integrate(f, a, b);
    total += adaptive_panel(f, a, b, whole, tol, max_depth);
  }
  return total;
}

}  // namespace zospg
