#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "affine_moduli/config.hpp"
#include "affine_moduli/errors.hpp"
#include "affine_moduli/linalg.hpp"

namespace affine_moduli {

// Connection coefficient tensor on R^m with constant coefficients; entry
// (i, j, k) holds the component with lower indices (i, j) and upper index k,
// stored row-major. Values are immutable after construction.
struct Christoffel {
  int m = 0;
  std::vector<double> coeffs;

  Christoffel() = default;

  explicit Christoffel(int dim)
      : m(dim), coeffs(static_cast<size_t>(dim) * dim * dim, 0.0) {
    if (dim < 1) throw BadParams("Christoffel: dimension must be >= 1");
  }

  Christoffel(int dim, std::vector<double> c) : m(dim), coeffs(std::move(c)) {
    if (dim < 1) throw BadParams("Christoffel: dimension must be >= 1");
    if (coeffs.size() != static_cast<size_t>(dim) * dim * dim)
      throw DimensionMismatch("Christoffel: coefficient count must be m^3");
    for (double v : coeffs)
      if (!std::isfinite(v)) throw NonFinite("Christoffel: non-finite coefficient");
  }

  double& at(int i, int j, int k) {
    return coeffs[(static_cast<size_t>(i) * m + j) * m + k];
  }
  double at(int i, int j, int k) const {
    return coeffs[(static_cast<size_t>(i) * m + j) * m + k];
  }

  double max_abs() const {
    double s = 0.0;
    for (double v : coeffs) s = std::max(s, std::abs(v));
    return s;
  }
};

// General bilinear form; no symmetry assumed. Entry (j, k) is the component
// on dx^j (x) dx^k.
struct TwoTensor {
  Mat entries;

  TwoTensor() = default;
  explicit TwoTensor(int m) : entries(m, m) {}
  explicit TwoTensor(Mat e) : entries(std::move(e)) {
    if (entries.rows != entries.cols)
      throw DimensionMismatch("TwoTensor: square matrix required");
    if (!all_finite(entries)) throw NonFinite("TwoTensor: non-finite entry");
  }

  int dim() const { return entries.rows; }
};

// Symmetric bilinear form; symmetrized exactly on construction.
struct SymForm {
  Mat entries;

  SymForm() = default;
  explicit SymForm(int m) : entries(m, m) {}
  explicit SymForm(Mat e) : entries(std::move(e)) {
    if (entries.rows != entries.cols)
      throw DimensionMismatch("SymForm: square matrix required");
    if (!all_finite(entries)) throw NonFinite("SymForm: non-finite entry");
    for (int i = 0; i < entries.rows; ++i)
      for (int j = i + 1; j < entries.cols; ++j) {
        const double s = 0.5 * (entries(i, j) + entries(j, i));
        entries(i, j) = s;
        entries(j, i) = s;
      }
  }

  int dim() const { return entries.rows; }
};

// Linear self-map of R^m; column j is the image of basis vector e_j.
// Invertibility and orientation are checked by the operations that need them.
struct LinearMap {
  Mat entries;

  LinearMap() = default;
  explicit LinearMap(Mat e) : entries(std::move(e)) {
    if (entries.rows != entries.cols)
      throw DimensionMismatch("LinearMap: square matrix required");
    if (!all_finite(entries)) throw NonFinite("LinearMap: non-finite entry");
  }

  int dim() const { return entries.rows; }

  static LinearMap identity(int m) { return LinearMap(Mat::identity(m)); }
};

struct CovectorField {
  Vec components;

  int dim() const { return static_cast<int>(components.size()); }
};

using VectorSeq = Vec;

// Signature of a symmetric form: p negative (timelike) eigenvalues and q
// positive (spacelike) ones. Note the convention: (m, 0) means negative
// definite, (0, m) positive definite.
struct Signature {
  int p = 0;
  int q = 0;
  bool degenerate = false;

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline LinearMap compose(const LinearMap& a, const LinearMap& b) {
  return LinearMap(matmul(a.entries, b.entries));
}

// Basis change. (A.Gamma)_{ij}^k = sum Gamma_{ab}^c A^a_i A^b_j (A^{-1})^k_c.
// Right action: act(A, act(B, G)) == act(B*A, G). Contracts one index at a
// time, so the cost is O(m^4).
inline Christoffel act(const LinearMap& map, const Christoffel& gamma,
                       const Tolerances& tol = default_tolerances()) {
  const int m = gamma.m;
  if (map.dim() != m) throw DimensionMismatch("act: map and tensor dimensions differ");
  const double d = determinant(map.entries);
  if (!(std::abs(d) > tol.det)) throw SingularMap("act: |det A| below cutoff");
  const Mat& A = map.entries;
  const Mat Ainv = inverse(A, tol.det);

  const auto idx = [m](int i, int j, int k) {
    return (static_cast<size_t>(i) * m + j) * m + k;
  };
  std::vector<double> t1(gamma.coeffs.size(), 0.0);  // upper index transformed
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += gamma.at(a, b, c) * Ainv(k, c);
        t1[idx(a, b, k)] = s;
      }
  std::vector<double> t2(gamma.coeffs.size(), 0.0);  // second lower index
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int b = 0; b < m; ++b) s += t1[idx(a, b, k)] * A(b, j);
        t2[idx(a, j, k)] = s;
      }
  std::vector<double> out(gamma.coeffs.size(), 0.0);  // first lower index
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int a = 0; a < m; ++a) s += t2[idx(a, j, k)] * A(a, i);
        out[idx(i, j, k)] = s;
      }
  return Christoffel(m, std::move(out));
}

// Pullback of a bilinear form: A^T sigma A.
inline TwoTensor act_on_form(const LinearMap& map, const TwoTensor& sigma) {
  if (map.dim() != sigma.dim())
    throw DimensionMismatch("act_on_form: dimensions differ");
  return TwoTensor(matmul(transpose(map.entries), matmul(sigma.entries, map.entries)));
}

inline SymForm act_on_form(const LinearMap& map, const SymForm& sigma) {
  if (map.dim() != sigma.dim())
    throw DimensionMismatch("act_on_form: dimensions differ");
  return SymForm(matmul(transpose(map.entries), matmul(sigma.entries, map.entries)));
}

// Antisymmetric part in the lower index pair; zero exactly on torsion-free
// tensors.
inline Christoffel torsion(const Christoffel& gamma) {
  const int m = gamma.m;
  Christoffel t(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        t.at(i, j, k) = gamma.at(i, j, k) - gamma.at(j, i, k);
  return t;
}

inline bool is_torsion_free(const Christoffel& gamma, double tol = 1e-10) {
  return torsion(gamma).max_abs() <= tol;
}

}  // namespace affine_moduli
