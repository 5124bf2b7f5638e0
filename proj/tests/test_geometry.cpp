#include <doctest.h>

#include <cmath>
#include <set>

#include "zospg/geometry.hpp"
#include "zospg/verify.hpp"

using namespace zospg;

TEST_CASE("ball projection examples") {
  const FeasibleSet ball = FeasibleSet::ball(Vector::Zero(3), 1.0);
  const Vector p = ball.project(Vector{{3.0, 4.0, 0.0}});
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));
  CHECK(p[2] == 0.0);
  const Vector inside{{0.1, -0.2, 0.3}};
  CHECK(ball.project(inside) == inside);
  CHECK(ball.outer_radius() == 1.0);
  CHECK(ball.distance(Vector{{0.0, 0.0, 2.5}}) == doctest::Approx(1.5));

  const FeasibleSet shifted = FeasibleSet::ball(Vector{{1.0, 1.0}}, 0.5);
  const Vector q = project(shifted, Vector{{1.0, 3.0}});
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(q[1] == doctest::Approx(1.5));
  CHECK(shifted.outer_radius() == doctest::Approx(std::sqrt(2.0) + 0.5));
}

TEST_CASE("box projection clamps coordinates") {
  const FeasibleSet box = FeasibleSet::box(Vector{{-1.0, 0.0}}, Vector{{1.0, 2.0}});
  const Vector p = box.project(Vector{{-3.0, 1.5}});
  CHECK(p[0] == -1.0);
  CHECK(p[1] == 1.5);
  CHECK(box.outer_radius() == doctest::Approx(std::sqrt(5.0)));
  CHECK(box.contains(Vector{{1.0, 2.0}}));
  CHECK_FALSE(box.contains(Vector{{1.0, 2.1}}));
}

TEST_CASE("projection properties on random points") {
  CHECK(check_projection(FeasibleSet::ball(Vector::Zero(4), 2.0), 5000, 1).passed);
  CHECK(check_projection(FeasibleSet::box(Vector{{-1, -1, 0}}, Vector{{1, 0, 0}}), 5000, 2).passed);
}

TEST_CASE("invalid sets and dimension mismatch") {
  CHECK_THROWS_AS(FeasibleSet::ball(Vector::Zero(2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::ball(Vector::Zero(2), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::box(Vector{{1.0}}, Vector{{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::box(Vector{{0.0, 0.0}}, Vector{{1.0}}), std::invalid_argument);
  const FeasibleSet ball = FeasibleSet::ball(Vector::Zero(3), 1.0);
  Vector x = Vector::Zero(2);
  CHECK_THROWS_AS(ball.project_inplace(x), std::invalid_argument);
}

TEST_CASE("directions are unit vectors with isotropic second moment") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Direction e = sample_direction(7, rng);
    CHECK(e.dim() == 7);
    CHECK(e.vector().norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(check_sampling(3, 200000, 9).passed);
  CHECK(check_sampling(1, 10000, 9).passed);
  CHECK_THROWS_AS(sample_direction(0, rng), std::invalid_argument);
}

TEST_CASE("scalar draws lie in [-1, 1]") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double r = sample_scalar(rng);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("derived seeds are deterministic and distinct") {
  CHECK(derive_seed(42, {1, 2}) == derive_seed(42, {1, 2}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(7, {a, b}));
  CHECK(seen.size() == 400);
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
  CHECK(derive_seed(1, {0, 1}) != derive_seed(1, {1, 0}));
}

TEST_CASE("same seed, same stream") {
  Rng a(11), b(11);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}
