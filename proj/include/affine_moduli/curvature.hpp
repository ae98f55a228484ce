#pragma once

#include <cmath>
#include <vector>

#include "affine_moduli/linalg.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli {

// Rank-4 curvature coefficients R_{ijk}^l, index order (i, j, k, l).
struct CurvatureTensor {
  int m = 0;
  std::vector<double> r;

  explicit CurvatureTensor(int dim)
      : m(dim), r(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

  double& at(int i, int j, int k, int l) {
    return r[((static_cast<size_t>(i) * m + j) * m + k) * m + l];
  }
  double at(int i, int j, int k, int l) const {
    return r[((static_cast<size_t>(i) * m + j) * m + k) * m + l];
  }
};

// For constant coefficients the derivative terms vanish:
// R_{ijk}^l = Gamma_{in}^l Gamma_{jk}^n - Gamma_{jn}^l Gamma_{ik}^n.
inline CurvatureTensor curvature_operator(const Christoffel& g) {
  const int m = g.m;
  CurvatureTensor R(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int n = 0; n < m; ++n)
            s += g.at(i, n, l) * g.at(j, k, n) - g.at(j, n, l) * g.at(i, k, n);
          R.at(i, j, k, l) = s;
        }
  return R;
}

struct RicciSplit {
  TwoTensor rho1;
  TwoTensor rho2;
  CovectorField omega;
};

// omega_i = Gamma_{ij}^j, rho1_{jk} = Gamma_{in}^i Gamma_{jk}^n,
// rho2_{jk} = Gamma_{jn}^i Gamma_{ik}^n. The identity rho1 - rho2 = ricci
// holds entrywise.
inline RicciSplit ricci_split(const Christoffel& g) {
  const int m = g.m;
  RicciSplit out{TwoTensor(m), TwoTensor(m), CovectorField{Vec(m, 0.0)}};
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += g.at(i, j, j);
    out.omega.components[i] = s;
  }
  // trace over (first lower, upper) as a function of the second lower index
  Vec tr(m, 0.0);
  for (int n = 0; n < m; ++n) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += g.at(i, n, i);
    tr[n] = s;
  }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      double s1 = 0.0, s2 = 0.0;
      for (int n = 0; n < m; ++n) {
        s1 += tr[n] * g.at(j, k, n);
        for (int i = 0; i < m; ++i) s2 += g.at(j, n, i) * g.at(i, k, n);
      }
      out.rho1.entries(j, k) = s1;
      out.rho2.entries(j, k) = s2;
    }
  return out;
}

// rho_{jk} = Gamma_{in}^i Gamma_{jk}^n - Gamma_{jn}^i Gamma_{ik}^n. Generally
// non-symmetric when torsion is present; symmetric on torsion-free input.
inline TwoTensor ricci(const Christoffel& g) {
  RicciSplit s = ricci_split(g);
  return TwoTensor(s.rho1.entries - s.rho2.entries);
}

inline SymForm symmetric_ricci(const Christoffel& g) {
  return SymForm(ricci(g).entries);
}

// p = count of negative eigenvalues, q = count of positive ones; an
// eigenvalue within tol_rel * spectral radius (floored at tol_abs) of zero
// marks the form degenerate.
inline Signature signature(const SymForm& sigma, double tol_rel = 1e-9,
                           double tol_abs = 1e-12) {
  if (!all_finite(sigma.entries)) throw NonFinite("signature: non-finite entry");
  EigenSym e = jacobi_eigen(sigma.entries);
  double scale = 0.0;
  for (double v : e.values) scale = std::max(scale, std::abs(v));
  const double thr = std::max(tol_rel * scale, tol_abs);
  Signature s;
  for (double v : e.values) {
    if (v < -thr)
      ++s.p;
    else if (v > thr)
      ++s.q;
  }
  s.degenerate = (s.p + s.q < sigma.dim());
  return s;
}

}  // namespace affine_moduli
