#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zospg/geometry.hpp"
#include "zospg/types.hpp"

namespace zospg {

struct Optimum {
  Vector point;
  double value;
};

/// Objective plus the metadata the schedules and bounds need.
struct Objective {
  std::string name;
  std::size_t dim = 0;
  std::function<double(const Vector&)> value;
  /// Exact gradient, diagnostics only. May be empty.
  std::function<Vector(const Vector&)> gradient;
  /// Strong-convexity modulus (0 for merely convex).
  double gamma = 0.0;
  /// Declared Hoelder constant used by the schedules.
  double holder_L = 1.0;
  /// Lipschitz constant G on the origin-centred ball of the given radius.
  std::function<double(double)> gradient_bound;
  /// How far outside the feasible set `value` may be queried.
  double domain_inflation = std::numeric_limits<double>::infinity();
  std::optional<Optimum> optimum;
};

/// f(x) = x1^2/4 + x2^2 + 4 x3^2 on the unit ball; gamma = 1/2, L = 0.01.
Objective scaled_quadratic();

/// f(x) = 1/2 sum_i s_i x_i^2 + <b, x>, s_i > 0. gamma = min s_i; the
/// unconstrained minimiser -b/s is recorded as the optimum.
Objective diagonal_quadratic(Vector spectrum, Vector linear);

/// f(x) = sum_i x_i^4 + gamma/2 ||x||^2, optimum 0. `domain_radius` fixes
/// the declared Hoelder constant for beta = 3 (L = 6 * domain_radius).
Objective quartic(std::size_t n, double gamma, double domain_radius = 2.0);

/// f(x) = ||x||^4, convex but not strongly convex, optimum 0.
Objective convex_quartic(std::size_t n, double domain_radius = 2.0);

/// (a) scaled quadratic x1^2/4 + x2^2 + 4 x3^2, (b) diagonal quadratic with spectrum (1, 3, 10),
/// (c) quartic with gamma = 1, (d) convex quartic; all three-dimensional.
std::vector<Objective> make_test_suite();

/// f(x) + gamma/2 ||x - center||^2. The optimum is not carried over.
Objective regularize(const Objective& f, double gamma, const Vector& center);

/// Additive query noise. Draws depend only on the query index and the
/// noise stream, never on the optimizer's (r, e) draws.
class NoiseModel {
 public:
  struct None {};
  struct Gaussian {
    double sigma;
  };
  /// Uniform on [-sigma sqrt(3), sigma sqrt(3)], so E[xi^2] = sigma^2.
  struct UniformBounded {
    double sigma;
  };
  struct ConstantBias {
    double bias;
  };
  /// +bias on even query indices, -bias on odd ones.
  struct AlternatingBias {
    double bias;
  };
  using Variant = std::variant<None, Gaussian, UniformBounded, ConstantBias, AlternatingBias>;

  NoiseModel() = default;
  static NoiseModel none() { return NoiseModel(None{}); }
  static NoiseModel gaussian(double sigma);
  static NoiseModel uniform(double sigma);
  static NoiseModel constant_bias(double bias) { return NoiseModel(ConstantBias{bias}); }
  static NoiseModel alternating_bias(double bias) { return NoiseModel(AlternatingBias{bias}); }

  double draw(std::uint64_t query_index, Rng& rng) const;
  /// Smallest sigma with E[xi^2] <= sigma^2.
  double sigma_effective() const;
  std::string describe() const;
  const Variant& variant() const { return variant_; }

 private:
  explicit NoiseModel(Variant v) : variant_(v) {}
  Variant variant_{None{}};
};

struct QueryLedger {
  std::uint64_t count = 0;
};

/// One iteration's pair of noisy values: (f(x_plus) + xi, f(x_minus) + xi'),
/// with the noise for iteration k drawn at query indices 2(k-1) and
/// 2(k-1)+1. Adds 2 to the ledger. When `domain` is given, both points must
/// lie within `obj.domain_inflation` of it (DomainError otherwise).
std::pair<double, double> noisy_pair(const Objective& obj, const NoiseModel& noise,
                                     const Vector& x_plus, const Vector& x_minus,
                                     std::uint64_t k, Rng& noise_rng, QueryLedger& ledger,
                                     const FeasibleSet* domain = nullptr);

}  // namespace zospg
