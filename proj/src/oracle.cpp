#include "zospg/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace zospg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Objective scaled_quadratic() {
  Objective f = diagonal_quadratic(Vector{{0.5, 2.0, 8.0}}, Vector::Zero(3));
  f.name = "scaled_quadratic";
  f.holder_L = 0.01;
  return f;
}

Objective diagonal_quadratic(Vector spectrum, Vector linear) {
  if (spectrum.size() == 0 || spectrum.size() != linear.size()) {
    throw std::invalid_argument("diagonal_quadratic: spectrum and linear term must match");
  }
  if (!(spectrum.array() > 0.0).all()) {
    throw std::invalid_argument("diagonal_quadratic: spectrum must be positive");
  }
  Objective f;
  f.name = "quadratic";
  f.dim = static_cast<std::size_t>(spectrum.size());
  f.value = [spectrum, linear](const Vector& x) {
    return 0.5 * x.dot(spectrum.cwiseProduct(x)) + linear.dot(x);
  };
  f.gradient = [spectrum, linear](const Vector& x) -> Vector {
    return spectrum.cwiseProduct(x) + linear;
  };
  f.gamma = spectrum.minCoeff();
  // Quadratics have zero Hoelder remainder for beta > 2; L is a schedule knob.
  f.holder_L = 0.01;
  const double smax = spectrum.maxCoeff();
  const double bnorm = linear.norm();
  f.gradient_bound = [smax, bnorm](double radius) { return smax * radius + bnorm; };
  Vector xstar = -linear.cwiseQuotient(spectrum);
  const double fstar = 0.5 * xstar.dot(spectrum.cwiseProduct(xstar)) + linear.dot(xstar);
  f.optimum = Optimum{std::move(xstar), fstar};
  return f;
}

Objective quartic(std::size_t n, double gamma, double domain_radius) {
  if (n == 0) throw std::invalid_argument("quartic: n must be >= 1");
  if (gamma < 0.0) throw std::invalid_argument("quartic: gamma must be >= 0");
  Objective f;
  f.name = "quartic";
  f.dim = n;
  f.value = [gamma](const Vector& x) {
    return x.array().square().square().sum() + 0.5 * gamma * x.squaredNorm();
  };
  f.gradient = [gamma](const Vector& x) -> Vector {
    return (4.0 * x.array().cube()).matrix() + gamma * x;
  };
  f.gamma = gamma;
  // Remainder after the quadratic Taylor term: sum 4 x_i h_i^3 + h_i^4, bounded
  // by (4R + 2R) ||h||^3 on a radius-R ball.
  f.holder_L = 6.0 * domain_radius;
  // ||grad|| <= 4 ||x||_6^3 + gamma ||x|| <= 4 R^3 + gamma R.
  f.gradient_bound = [gamma](double radius) {
    return 4.0 * radius * radius * radius + gamma * radius;
  };
  f.optimum = Optimum{Vector::Zero(static_cast<Eigen::Index>(n)), 0.0};
  return f;
}

Objective convex_quartic(std::size_t n, double domain_radius) {
  if (n == 0) throw std::invalid_argument("convex_quartic: n must be >= 1");
  Objective f;
  f.name = "convex_quartic";
  f.dim = n;
  f.value = [](const Vector& x) {
    const double s = x.squaredNorm();
    return s * s;
  };
  f.gradient = [](const Vector& x) -> Vector { return 4.0 * x.squaredNorm() * x; };
  f.gamma = 0.0;
  // ||x+h||^4 minus its quadratic Taylor polynomial is 4<x,h>||h||^2 + ||h||^4.
  f.holder_L = 6.0 * domain_radius;
  f.gradient_bound = [](double radius) { return 4.0 * radius * radius * radius; };
  f.optimum = Optimum{Vector::Zero(static_cast<Eigen::Index>(n)), 0.0};
  return f;
}

std::vector<Objective> make_test_suite() {
  std::vector<Objective> suite;
  suite.push_back(scaled_quadratic());
  suite.push_back(diagonal_quadratic(Vector{{1.0, 3.0, 10.0}}, Vector{{0.2, -0.3, 0.5}}));
  suite.push_back(quartic(3, 1.0));
  suite.push_back(convex_quartic(3));
  return suite;
}

Objective regularize(const Objective& f, double gamma, const Vector& center) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("regularize: gamma must be >= 0");
  if (static_cast<std::size_t>(center.size()) != f.dim) {
    throw std::invalid_argument("regularize: center dimension mismatch");
  }
  Objective g = f;
  g.name = fmt::format("{}+reg({})", f.name, gamma);
  g.value = [value = f.value, gamma, center](const Vector& x) {
    return value(x) + 0.5 * gamma * (x - center).squaredNorm();
  };
  if (f.gradient) {
    g.gradient = [grad = f.gradient, gamma, center](const Vector& x) -> Vector {
      return grad(x) + gamma * (x - center);
    };
  }
  g.gamma = f.gamma + gamma;
  const double cnorm = center.norm();
  g.gradient_bound = [bound = f.gradient_bound, gamma, cnorm](double radius) {
    return bound(radius) + gamma * (radius + cnorm);
  };
  g.optimum.reset();
  return g;
}

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian noise: sigma must be >= 0");
  return NoiseModel(Gaussian{sigma});
}

NoiseModel NoiseModel::uniform(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("uniform noise: sigma must be >= 0");
  return NoiseModel(UniformBounded{sigma});
}

double NoiseModel::draw(std::uint64_t query_index, Rng& rng) const {
  return std::visit(
      overloaded{[](const None&) { return 0.0; },
                 [&](const Gaussian& g) { return g.sigma * rng.normal(); },
                 [&](const UniformBounded& u) {
                   const double half = u.sigma * std::sqrt(3.0);
                   return rng.uniform(-half, half);
                 },
                 [](const ConstantBias& c) { return c.bias; },
                 [&](const AlternatingBias& a) {
                   return query_index % 2 == 0 ? a.bias : -a.bias;
                 }},
      variant_);
}

double NoiseModel::sigma_effective() const {
  return std::visit(overloaded{[](const None&) { return 0.0; },
                               [](const Gaussian& g) { return g.sigma; },
                               [](const UniformBounded& u) { return u.sigma; },
                               [](const ConstantBias& c) { return std::abs(c.bias); },
                               [](const AlternatingBias& a) { return std::abs(a.bias); }},
                    variant_);
}

std::string NoiseModel::describe() const {
  return std::visit(
      overloaded{[](const None&) { return std::string("none"); },
                 [](const Gaussian& g) { return fmt::format("gaussian(sigma={})", g.sigma); },
                 [](const UniformBounded& u) { return fmt::format("uniform(sigma={})", u.sigma); },
                 [](const ConstantBias& c) { return fmt::format("constant_bias(b={})", c.bias); },
                 [](const AlternatingBias& a) {
                   return fmt::format("alternating_bias(b={})", a.bias);
                 }},
      variant_);
}

std::pair<double, double> noisy_pair(const Objective& obj, const NoiseModel& noise,
                                     const Vector& x_plus, const Vector& x_minus,
                                     std::uint64_t k, Rng& noise_rng, QueryLedger& ledger,
                                     const FeasibleSet* domain) {
  if (k == 0) throw std::invalid_argument("noisy_pair: iterations are numbered from 1");
  if (domain != nullptr && std::isfinite(obj.domain_inflation)) {
    const double slack = obj.domain_inflation + 1e-12;
    if (domain->distance(x_plus) > slack || domain->distance(x_minus) > slack) {
      throw DomainError(fmt::format(
          "iteration {}: query point lies farther than {} from the feasible set", k,
          obj.domain_inflation));
    }
  }
  const std::uint64_t base = 2 * (k - 1);
  const double xi = noise.draw(base, noise_rng);
  const double xi_prime = noise.draw(base + 1, noise_rng);
  ledger.count += 2;
  return {obj.value(x_plus) + xi, obj.value(x_minus) + xi_prime};
}

}  // namespace zospg
