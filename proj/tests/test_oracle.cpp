#include <doctest.h>

#include <cmath>

#include "zospg/oracle.hpp"

using namespace zospg;

TEST_CASE("quadratic from the experiments") {
  const Objective f = scaled_quadratic();
  CHECK(f.dim == 3);
  const Vector x{{1.0, 1.0, 1.0}};
  CHECK(f.value(x) == doctest::Approx(0.25 + 1.0 + 4.0));
  const Vector g = f.gradient(x);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(2.0));
  CHECK(g[2] == doctest::Approx(8.0));
  CHECK(f.gamma == 0.5);
  CHECK(f.holder_L == 0.01);
  REQUIRE(f.optimum);
  CHECK(f.optimum->value == 0.0);
  CHECK(f.optimum->point.norm() == 0.0);
}

TEST_CASE("diagonal quadratic with linear term") {
  const Objective f = diagonal_quadratic(Vector{{2.0, 4.0}}, Vector{{1.0, -2.0}});
  REQUIRE(f.optimum);
  CHECK(f.optimum->point[0] == doctest::Approx(-0.5));
  CHECK(f.optimum->point[1] == doctest::Approx(0.5));
  CHECK(f.optimum->value == doctest::Approx(f.value(f.optimum->point)));
  CHECK(f.gradient(f.optimum->point).norm() < 1e-15);
  CHECK(f.gamma == 2.0);
  CHECK_THROWS_AS(diagonal_quadratic(Vector{{1.0, 0.0}}, Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("gradients agree with finite differences") {
  for (const Objective& f : make_test_suite()) {
    CAPTURE(f.name);
    const Vector x{{0.3, -0.4, 0.2}};
    const Vector g = f.gradient(x);
    for (Eigen::Index i = 0; i < 3; ++i) {
      Vector h = Vector::Zero(3);
      h[i] = 1e-6;
      CHECK(g[i] == doctest::Approx((f.value(x + h) - f.value(x - h)) / 2e-6).epsilon(1e-6));
    }
  }
}

TEST_CASE("gradient bound covers the ball") {
  Rng rng(4);
  for (const Objective& f : make_test_suite()) {
    const double radius = 1.3;
    for (int i = 0; i < 500; ++i) {
      Vector x(3);
      for (int j = 0; j < 3; ++j) x[j] = rng.normal();
      x *= radius * std::pow(rng.uniform(0, 1), 1.0 / 3.0) / x.norm();
      CHECK(f.gradient(x).norm() <= f.gradient_bound(radius) * (1 + 1e-12));
    }
  }
}

TEST_CASE("quartic Hoelder remainder") {
  // |f(x+h) - f(x) - grad.h - h'Hh/2| <= L ||h||^3 for ||x||, ||x+h|| within the domain.
  const Objective f = quartic(3, 1.0, 2.0);
  const Objective c = convex_quartic(3, 2.0);
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    Vector x(3), h(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = rng.uniform(-1.1, 1.1);
      h[j] = rng.uniform(-1.1, 1.1);
    }
    if (x.norm() > 2.0 || (x + h).norm() > 2.0) continue;
    double quad = 0.0;
    for (int j = 0; j < 3; ++j) quad += (6.0 * x[j] * x[j] + 0.5) * h[j] * h[j];
    const double rem = f.value(x + h) - f.value(x) - f.gradient(x).dot(h) - quad;
    CHECK(std::abs(rem) <= f.holder_L * std::pow(h.norm(), 3) + 1e-12);
    const double s = x.squaredNorm(), xh = x.dot(h);
    const double cquad = 2.0 * s * h.squaredNorm() + 4.0 * xh * xh;
    const double crem = c.value(x + h) - c.value(x) - c.gradient(x).dot(h) - cquad;
    CHECK(std::abs(crem) <= c.holder_L * std::pow(h.norm(), 3) + 1e-12);
  }
}

TEST_CASE("regularization") {
  const Objective f = convex_quartic(2);
  const Vector c{{1.0, 0.0}};
  const Objective g = regularize(f, 0.2, c);
  const Vector x{{0.5, 0.5}};
  CHECK(g.value(x) == doctest::Approx(f.value(x) + 0.1 * (x - c).squaredNorm()));
  CHECK((g.gradient(x) - f.gradient(x) - 0.2 * (x - c)).norm() < 1e-15);
  CHECK(g.gamma == doctest::Approx(0.2));
  CHECK_FALSE(g.optimum);
  CHECK(g.gradient_bound(1.0) == doctest::Approx(4.0 + 0.2 * 2.0));
}

TEST_CASE("noise models") {
  Rng rng(1);
  CHECK(NoiseModel::none().draw(0, rng) == 0.0);
  const NoiseModel alt = NoiseModel::alternating_bias(0.3);
  CHECK(alt.draw(0, rng) == 0.3);
  CHECK(alt.draw(1, rng) == -0.3);
  CHECK(alt.draw(6, rng) == 0.3);
  CHECK(NoiseModel::constant_bias(-0.2).draw(5, rng) == -0.2);
  CHECK(NoiseModel::constant_bias(-0.2).sigma_effective() == 0.2);

  const NoiseModel uni = NoiseModel::uniform(0.5);
  double s2 = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double v = uni.draw(i, rng);
    CHECK(std::abs(v) <= 0.5 * std::sqrt(3.0));
    s2 += v * v;
  }
  CHECK(s2 / draws == doctest::Approx(0.25).epsilon(0.02));

  const NoiseModel gauss = NoiseModel::gaussian(0.1);
  double m = 0.0, v = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double d = gauss.draw(i, rng);
    m += d;
    v += d * d;
  }
  CHECK(std::abs(m / draws) < 5 * 0.1 / std::sqrt(draws));
  CHECK(v / draws == doctest::Approx(0.01).epsilon(0.02));
  CHECK_THROWS_AS(NoiseModel::gaussian(-1.0), std::invalid_argument);
  CHECK(gauss.describe() == "gaussian(sigma=0.1)");
}

TEST_CASE("paired queries are counted and carry independent noise") {
  const Objective f = scaled_quadratic();
  Rng rng(2);
  QueryLedger ledger;
  const Vector x = Vector::Zero(3);
  const auto [y, yp] = noisy_pair(f, NoiseModel::alternating_bias(1.0), x, x, 1, rng, ledger);
  CHECK(y == 1.0);
  CHECK(yp == -1.0);
  CHECK(ledger.count == 2);
  noisy_pair(f, NoiseModel::none(), x, x, 2, rng, ledger);
  CHECK(ledger.count == 4);
  CHECK_THROWS_AS(noisy_pair(f, NoiseModel::none(), x, x, 0, rng, ledger), std::invalid_argument);
}

TEST_CASE("queries beyond the domain inflation are rejected") {
  Objective f = scaled_quadratic();
  f.domain_inflation = 0.1;
  const FeasibleSet ball = FeasibleSet::ball(Vector::Zero(3), 1.0);
  Rng rng(2);
  QueryLedger ledger;
  const Vector ok{{1.05, 0.0, 0.0}}, far{{1.5, 0.0, 0.0}};
  CHECK_NOTHROW(noisy_pair(f, NoiseModel::none(), ok, ok, 1, rng, ledger, &ball));
  CHECK_THROWS_AS(noisy_pair(f, NoiseModel::none(), far, ok, 2, rng, ledger, &ball), DomainError);
}
