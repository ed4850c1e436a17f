#pragma once

#include <random>

#include "gabnc/lca.hpp"

namespace gabnc {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
inline CVector random_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(rng), normal(rng));
  return v;
}

}  // namespace gabnc
