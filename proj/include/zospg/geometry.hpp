#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <variant>

#include "zospg/types.hpp"

namespace zospg {

struct Ball {
  Vector center;
  double radius;
};

struct Box {
  Vector lower;
  Vector upper;
};

/// Convex compact feasible set with a closed-form Euclidean projection.
class FeasibleSet {
 public:
  /// Throws std::invalid_argument unless radius > 0.
  static FeasibleSet ball(Vector center, double radius);
  /// Throws std::invalid_argument unless lower <= upper componentwise.
  static FeasibleSet box(Vector lower, Vector upper);

  std::size_t dim() const;
  const std::variant<Ball, Box>& shape() const { return shape_; }

  /// Euclidean projection, in place. `x` must have the set's dimension.
  void project_inplace(Vector& x) const;
  Vector project(const Vector& x) const;

  double distance(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-12) const;
  /// max ||x|| over the set.
  double outer_radius() const;

 private:
  explicit FeasibleSet(std::variant<Ball, Box> shape) : shape_(std::move(shape)) {}
  std::variant<Ball, Box> shape_;
};

inline Vector project(const FeasibleSet& set, const Vector& x) { return set.project(x); }

/// Mixes a master seed with a path of stream identifiers (splitmix64 chain).
/// Distinct paths give statistically independent substreams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seeded generator owned by exactly one consumer (a trial's direction
/// stream, its noise stream, ...). Copying duplicates the stream state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return normal_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// A unit vector drawn uniformly from the sphere S^{n-1}.
class Direction {
 public:
  explicit Direction(std::size_t n) : e_(Vector::Zero(static_cast<Eigen::Index>(n))) {}

  /// Redraws in place: normalized standard-normal vector, redrawn on the
  /// all-zero case.
  void resample(Rng& rng);

  const Vector& vector() const { return e_; }
  std::size_t dim() const { return static_cast<std::size_t>(e_.size()); }
  double operator[](Eigen::Index i) const { return e_[i]; }

 private:
  Vector e_;
};

/// Throws std::invalid_argument if n == 0.
Direction sample_direction(std::size_t n, Rng& rng);

/// Uniform draw on [-1, 1].
inline double sample_scalar(Rng& rng) { return rng.uniform(-1.0, 1.0); }

}  // namespace zospg
