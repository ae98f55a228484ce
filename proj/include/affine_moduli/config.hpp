#pragma once

namespace affine_moduli {

// Central tolerance record. All defaults live here; operations take explicit
// overrides where the contract calls for one.
struct Tolerances {
  double det = 1e-12;            // invertibility cutoff for basis changes
  double equality = 1e-10;       // tensor symmetry / equality comparisons
  double signature_rel = 1e-9;   // eigenvalue degeneracy, relative to spectral radius
  double signature_abs = 1e-12;  // absolute floor for the degeneracy threshold
  double rank_rel = 1e-8;        // singular-value null threshold, relative to sigma_max
  double generic_base = 1e-10;   // genericity polynomial threshold scale
  double fixed_rel = 1e-9;       // is_fixed comparison, relative to 1 + |Gamma|_inf
  double scan_residual = 1e-8;   // accepted minimizer residual in the symmetry scan
  double scan_dedup = 1e-6;      // max-norm distance below which two maps coincide
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace affine_moduli
