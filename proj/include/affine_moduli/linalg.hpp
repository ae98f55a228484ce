#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "affine_moduli/errors.hpp"

namespace affine_moduli {

using Vec = std::vector<double>;

// Dense row-major matrix. Dimensions are small (m <= 12 for tensors, up to a
// few thousand rows for action matrices), so nothing beyond partial pivoting
// is needed.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline double max_abs(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

inline double max_abs(const Mat& m) { return max_abs(m.a); }

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const Mat& m) { return all_finite(m.a); }

inline Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

inline Mat matmul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw DimensionMismatch("matmul: inner dimensions differ");
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double xv = x(i, k);
      if (xv == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
    }
  return z;
}

inline Vec matvec(const Mat& m, const Vec& v) {
  if (m.cols != static_cast<int>(v.size()))
    throw DimensionMismatch("matvec: dimensions differ");
  Vec r(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat z(x.rows, x.cols);
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
  return z;
}

inline Mat operator*(double s, const Mat& x) {
  Mat z = x;
  for (double& v : z.a) v *= s;
  return z;
}

// LU with partial pivoting; factor kept packed, perm_sign tracks the
// permutation parity for the determinant.
struct LuFactor {
  Mat lu;
  std::vector<int> piv;
  double perm_sign = 1.0;
  bool singular = false;
};

inline LuFactor lu_factor(Mat m) {
  const int n = m.rows;
  LuFactor f;
  f.piv.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    f.piv[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      f.perm_sign = -f.perm_sign;
    }
    if (m(k, k) == 0.0) {
      f.singular = true;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      const double l = m(i, k);
      if (l == 0.0) continue;
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  f.lu = std::move(m);
  return f;
}

inline double determinant(const Mat& m) {
  if (m.rows != m.cols) throw DimensionMismatch("determinant: square matrix required");
  if (m.rows == 0) return 1.0;
  LuFactor f = lu_factor(m);
  double d = f.perm_sign;
  for (int i = 0; i < m.rows; ++i) d *= f.lu(i, i);
  return d;
}

inline Vec lu_solve(const LuFactor& f, Vec b) {
  const int n = f.lu.rows;
  for (int k = 0; k < n; ++k)
    if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) b[i] -= f.lu(i, j) * b[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
  return b;
}

inline Mat inverse(const Mat& m, double tol_det = 1e-12) {
  if (m.rows != m.cols) throw DimensionMismatch("inverse: square matrix required");
  const int n = m.rows;
  LuFactor f = lu_factor(m);
  double d = f.perm_sign;
  for (int i = 0; i < n; ++i) d *= f.lu(i, i);
  if (f.singular || std::abs(d) <= tol_det)
    throw SingularMap("inverse: |det| below cutoff");
  Mat inv(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    Vec x = lu_solve(f, std::move(e));
    for (int i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

// Adjugate: m * adjugate(m) = det(m) * I. Polynomial in the entries, so it is
// defined for singular inputs as well.
inline Mat adjugate(const Mat& m) {
  const int n = m.rows;
  if (n == 1) {
    Mat r(1, 1);
    r(0, 0) = 1.0;
    return r;
  }
  Mat adj(n, n);
  Mat minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int r = 0;
      for (int p = 0; p < n; ++p) {
        if (p == j) continue;
        int c = 0;
        for (int q = 0; q < n; ++q) {
          if (q == i) continue;
          minor(r, c) = m(p, q);
          ++c;
        }
        ++r;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(i, j) = sign * determinant(minor);
    }
  return adj;
}

struct EigenSym {
  Vec values;   // ascending
  Mat vectors;  // columns, orthonormal
};

// Cyclic Jacobi iteration for symmetric matrices. Converges unconditionally;
// the sweep threshold is relative to the Frobenius scale.
inline EigenSym jacobi_eigen(Mat m, int max_sweeps = 100) {
  const int n = m.rows;
  Mat v = Mat::identity(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += m(i, j) * m(i, j);
  scale = std::sqrt(scale);
  const double thresh = 1e-14 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (std::sqrt(off) < thresh) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  EigenSym e;
  e.values.resize(n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return m(a, a) < m(b, b); });
  e.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    e.values[j] = m(idx[j], idx[j]);
    for (int i = 0; i < n; ++i) e.vectors(i, j) = v(i, idx[j]);
  }
  return e;
}

struct SvdRight {
  Vec sigma;  // descending
  Mat v;      // right singular vectors, columns
};

// One-sided Jacobi: orthogonalize columns, accumulate the rotations. Only the
// right factor and the spectrum are kept; the left factor is never needed here.
inline SvdRight svd_right(Mat m, int max_sweeps = 60) {
  const int r = m.rows, c = m.cols;
  Mat v = Mat::identity(c);
  const double eps = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < c; ++p)
      for (int q = p + 1; q < c; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < r; ++i) {
          app += m(i, p) * m(i, p);
          aqq += m(i, q) * m(i, q);
          apq += m(i, p) * m(i, q);
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (int i = 0; i < r; ++i) {
          const double mp = m(i, p), mq = m(i, q);
          m(i, p) = cs * mp - sn * mq;
          m(i, q) = sn * mp + cs * mq;
        }
        for (int i = 0; i < c; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = cs * vp - sn * vq;
          v(i, q) = sn * vp + cs * vq;
        }
      }
    if (!rotated) break;
  }
  SvdRight out;
  out.sigma.resize(c);
  std::vector<int> idx(c);
  for (int j = 0; j < c; ++j) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += m(i, j) * m(i, j);
    out.sigma[j] = std::sqrt(s);
    idx[j] = j;
  }
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return out.sigma[a] > out.sigma[b]; });
  Vec sig(c);
  Mat vs(c, c);
  for (int j = 0; j < c; ++j) {
    sig[j] = out.sigma[idx[j]];
    for (int i = 0; i < c; ++i) vs(i, j) = v(i, idx[j]);
  }
  out.sigma = std::move(sig);
  out.v = std::move(vs);
  return out;
}

// Scaling-and-squaring exponential; adequate for the small well-scaled
// generators used by the symmetry scan.
inline Mat matexp(const Mat& m) {
  const int n = m.rows;
  double norm1 = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(m(i, j));
    norm1 = std::max(norm1, col);
  }
  int s = 0;
  while (norm1 > 0.5) {
    norm1 *= 0.5;
    ++s;
  }
  Mat b = (1.0 / std::ldexp(1.0, s)) * m;
  Mat x = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= 18; ++k) {
    term = (1.0 / k) * matmul(term, b);
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += term.a[i];
  }
  for (int k = 0; k < s; ++k) x = matmul(x, x);
  return x;
}

}  // namespace affine_moduli
