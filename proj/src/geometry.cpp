#include "zospg/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace zospg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
  if (center.size() == 0) throw std::invalid_argument("ball center must be non-empty");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("box bounds must be non-empty and of equal length");
  }
  if ((lower.array() > upper.array()).any() || !lower.allFinite() || !upper.allFinite()) {
    throw std::invalid_argument("box requires finite lower <= upper componentwise");
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

std::size_t FeasibleSet::dim() const {
  return std::visit(overloaded{[](const Ball& b) { return static_cast<std::size_t>(b.center.size()); },
                               [](const Box& b) { return static_cast<std::size_t>(b.lower.size()); }},
                    shape_);
}

void FeasibleSet::project_inplace(Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) {
    throw std::invalid_argument("project: dimension mismatch");
  }
  std::visit(overloaded{[&](const Ball& b) {
                          const double dist = (x - b.center).norm();
                          if (dist > b.radius) {
                            x = b.center + (x - b.center) * (b.radius / dist);
                          }
                        },
                        [&](const Box& b) { x = x.cwiseMax(b.lower).cwiseMin(b.upper); }},
             shape_);
}

Vector FeasibleSet::project(const Vector& x) const {
  Vector out = x;
  project_inplace(out);
  return out;
}

double FeasibleSet::distance(const Vector& x) const { return (x - project(x)).norm(); }

bool FeasibleSet::contains(const Vector& x, double tol) const { return distance(x) <= tol; }

double FeasibleSet::outer_radius() const {
  return std::visit(overloaded{[](const Ball& b) { return b.center.norm() + b.radius; },
                               [](const Box& b) {
                                 return b.lower.cwiseAbs().cwiseMax(b.upper.cwiseAbs()).norm();
                               }},
                    shape_);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t id : path) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

void Direction::resample(Rng& rng) {
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < e_.size(); ++i) e_[i] = rng.normal();
    norm = e_.norm();
  } while (!(norm > 0.0));
  e_ /= norm;
}

Direction sample_direction(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_direction: n must be >= 1");
  Direction d(n);
  d.resample(rng);
  return d;
}

}  // namespace zospg
