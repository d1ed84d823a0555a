#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "ogs/grid.hpp"

namespace ogs::testing {

inline Grid random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                        double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Grid g(rows, cols);
  for (double& v : g) v = u(rng);
  return g;
}

inline double max_abs_diff(const Grid& a, const Grid& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace ogs::testing
