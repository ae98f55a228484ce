#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "affine_moduli/curvature.hpp"
#include "affine_moduli/linalg.hpp"
#include "affine_moduli/sampling.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli {

// Cofactor (adjugate) matrix: sigma * cofactor_matrix(sigma) = det(sigma) * I.
// Polynomial in the entries, defined for singular input.
inline Mat cofactor_matrix(const SymForm& sigma) { return adjugate(sigma.entries); }

// xi~_n = (cof(rho_s) * rho_{2,s})^n * cof(rho_s) * omega for n = 0..n_max-1.
// Polynomial in the tensor entries, so defined everywhere; proportional to the
// resolvent-series vectors whenever rho_s is invertible.
inline std::vector<VectorSeq> xi_tilde_sequence(const Christoffel& g, int n_max) {
  if (n_max < 1) throw BadParams("xi_tilde_sequence: n_max must be >= 1");
  RicciSplit sp = ricci_split(g);
  const SymForm rho_s = symmetric_ricci(g);
  const SymForm rho2_s(sp.rho2.entries);
  const Mat cof = adjugate(rho_s.entries);
  const Mat step = matmul(cof, rho2_s.entries);
  std::vector<VectorSeq> xs;
  xs.reserve(n_max);
  Vec v = matvec(cof, sp.omega.components);
  xs.push_back(v);
  for (int n = 1; n < n_max; ++n) {
    v = matvec(step, v);
    xs.push_back(v);
  }
  return xs;
}

struct GenericityReport {
  double det_rho_s = 0.0;
  std::vector<VectorSeq> xi_tilde;  // exactly m vectors
  double poly_value = 0.0;          // det(rho_s) * det(xi~_0 .. xi~_{m-1})
  double tol = 0.0;
  bool generic = false;
};

// The polynomial is homogeneous of degree m^3 + m^2 + m in the tensor
// entries; the threshold below scales only with the degree of its det(rho_s)
// factor (2m), which keeps it clear of rounding noise without swamping
// honest values of the full-degree polynomial.
inline double generic_tolerance(const Christoffel& g, double base = 1e-10) {
  const int deg = 2 * g.m;
  return base * std::pow(1.0 + g.max_abs(), deg);
}

inline GenericityReport generic_poly(const Christoffel& g) {
  const int m = g.m;
  GenericityReport rep;
  rep.det_rho_s = determinant(symmetric_ricci(g).entries);
  rep.xi_tilde = xi_tilde_sequence(g, m);
  Mat cols(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) cols(i, j) = rep.xi_tilde[j][i];
  rep.poly_value = rep.det_rho_s * determinant(cols);
  rep.tol = generic_tolerance(g);
  rep.generic = std::abs(rep.poly_value) > rep.tol;
  return rep;
}

struct ExponentReport {
  int kappa = 0;
  // true when the polynomial changes sign exactly for orientation-reversing
  // maps, i.e. kappa is odd
  bool odd_sign_flip = false;
  double max_deviation = 0.0;  // worst |estimate - kappa| over the trials
};

// Measures the integer kappa with P(act(A, G)) = det(A)^kappa P(G) by random
// experiment. Kept empirical: the exponent is a consequence of the chosen
// action convention and is reported rather than assumed.
inline ExponentReport equivariance_exponent(int m, int trials, std::uint64_t seed) {
  if (trials < 10) throw BadParams("equivariance_exponent: trials must be >= 10");
  std::vector<double> estimates;
  int sign_flips = 0, negative_dets = 0;
  int t = 0;
  std::uint64_t stream = 0;
  while (t < trials) {
    SplitMix64 rng(derive_seed(seed, stream++));
    if (stream > static_cast<std::uint64_t>(trials) * 50)
      throw InconsistentExponent("equivariance_exponent: could not draw enough usable trials");
    Christoffel g = random_christoffel(m, rng);
    GenericityReport base = generic_poly(g);
    if (std::abs(base.poly_value) <= base.tol) continue;
    // keep |log|det|| bounded away from 0 so the exponent estimate is stable
    LinearMap a = random_linear_map(m, rng, 0.2, 5.0, true);
    const double d = determinant(a.entries);
    if (std::abs(std::log(std::abs(d))) < 0.2) continue;
    GenericityReport moved = generic_poly(act(a, g));
    if (std::abs(moved.poly_value) <= moved.tol) continue;
    estimates.push_back(std::log(std::abs(moved.poly_value / base.poly_value)) /
                        std::log(std::abs(d)));
    if (d < 0.0) {
      ++negative_dets;
      if ((moved.poly_value < 0.0) != (base.poly_value < 0.0)) ++sign_flips;
    }
    ++t;
  }
  double sum = 0.0;
  for (double e : estimates) sum += e;
  const int kappa = static_cast<int>(std::lround(sum / estimates.size()));
  double worst = 0.0;
  for (double e : estimates) worst = std::max(worst, std::abs(e - kappa));
  if (worst > 1e-6)
    throw InconsistentExponent("equivariance_exponent: trials disagree");
  ExponentReport rep;
  rep.kappa = kappa;
  rep.max_deviation = worst;
  rep.odd_sign_flip = (negative_dets > 0) && (sign_flips == negative_dets);
  return rep;
}

}  // namespace affine_moduli
