#pragma once

// Random scene generators shared by the property-style tests.

#include <random>
#include <vector>

#include "starvis/grid.hpp"
#include "starvis/obstacle.hpp"

namespace starvis::testing {

inline Vec random_point(std::mt19937& rng, int dim, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec p{};
  for (int k = 0; k < dim; ++k) p[k] = u(rng);
  return p;
}

inline ObstacleSpec random_primitive(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return ObstacleSpec::ball(dim, random_point(rng, dim), 0.1 + 0.4 * u(rng));
    case 1: {
      Vec half{};
      for (int k = 0; k < dim; ++k) half[k] = 0.05 + 0.4 * u(rng);
      return ObstacleSpec::box(dim, random_point(rng, dim), half);
    }
    case 2: {
      Vec normal = random_point(rng, dim);
      return ObstacleSpec::halfspace(dim, normal, 0.5 + u(rng));
    }
    default:
      return ObstacleSpec::cone(dim, random_point(rng, dim), 0.5 * u(rng), 0.5 + u(rng));
  }
}

/// Random tree of primitives under min/max/negate/scale/offset.
inline ObstacleSpec random_spec(std::mt19937& rng, int dim, int depth = 3) {
  if (depth == 0 || std::uniform_int_distribution<int>(0, 2)(rng) == 0) return random_primitive(rng, dim);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
    case 1: {
      std::vector<ObstacleSpec> kids;
      const int count = std::uniform_int_distribution<int>(2, 3)(rng);
      for (int c = 0; c < count; ++c) kids.push_back(random_spec(rng, dim, depth - 1));
      return u(rng) < 0.6 ? ObstacleSpec::max(std::move(kids)) : ObstacleSpec::min(std::move(kids));
    }
    case 2:
      return ObstacleSpec::negate(random_spec(rng, dim, depth - 1));
    case 3:
      return ObstacleSpec::scale(0.2 + 2.0 * u(rng), random_spec(rng, dim, depth - 1));
    default:
      return ObstacleSpec::offset(u(rng) - 0.5, random_spec(rng, dim, depth - 1));
  }
}

inline std::vector<double> values_of(const ScalarField& f) { return {f.values().begin(), f.values().end()}; }

inline Grid random_grid(std::mt19937& rng, int dim, int min_n = 5, int max_n = 24) {
  std::uniform_int_distribution<int> count(min_n, max_n);
  Vec lo{}, hi{};
  Index n{};
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int k = 0; k < dim; ++k) {
    lo[k] = -1.0 - u(rng);
    hi[k] = 1.0 + u(rng);
    n[k] = count(rng);
  }
  return Grid(dim, lo, hi, n);
}

}  // namespace starvis::testing
