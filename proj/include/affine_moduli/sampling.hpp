#pragma once

#include <cmath>

#include "affine_moduli/linalg.hpp"
#include "affine_moduli/rng.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli {

// Entries uniform in [-1, 1]; symmetrized in the lower pair when torsion_free.
inline Christoffel random_christoffel(int m, SplitMix64& rng, bool torsion_free = true) {
  Christoffel g(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) g.at(i, j, k) = rng.uniform(-1.0, 1.0);
  if (torsion_free) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const double s = 0.5 * (g.at(i, j, k) + g.at(j, i, k));
          g.at(i, j, k) = s;
          g.at(j, i, k) = s;
        }
  }
  return g;
}

// Rejection-sampled map with |det| in [min_abs_det, max_abs_det]. A diagonal
// shift keeps most draws comfortably invertible. allow_negative admits
// orientation-reversing draws.
inline LinearMap random_linear_map(int m, SplitMix64& rng, double min_abs_det = 0.2,
                                   double max_abs_det = 5.0, bool allow_negative = false) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        a(i, j) = rng.uniform(-1.0, 1.0) + (i == j ? 0.75 : 0.0);
    const double d = determinant(a);
    if (std::abs(d) < min_abs_det || std::abs(d) > max_abs_det) continue;
    if (d < 0.0 && !allow_negative) {
      for (int i = 0; i < m; ++i) a(i, 0) = -a(i, 0);
    }
    return LinearMap(std::move(a));
  }
  throw Error("random_linear_map: rejection sampling failed");
}

}  // namespace affine_moduli
