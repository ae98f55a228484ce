#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "affine_moduli/config.hpp"
#include "affine_moduli/curvature.hpp"
#include "affine_moduli/linalg.hpp"
#include "affine_moduli/rng.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli {

// Derivative at t = 0 of act(I + t xi, Gamma):
// (xi . G)_{ij}^k = xi^a_i G_{aj}^k + xi^b_j G_{ib}^k - xi^k_c G_{ij}^c.
inline Christoffel infinitesimal_action(const Mat& xi, const Christoffel& g) {
  const int m = g.m;
  if (xi.rows != m || xi.cols != m)
    throw DimensionMismatch("infinitesimal_action: dimensions differ");
  Christoffel out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
          s += xi(a, i) * g.at(a, j, k) + xi(a, j) * g.at(i, a, k) -
               xi(k, a) * g.at(i, j, a);
        out.at(i, j, k) = s;
      }
  return out;
}

struct StabilizerReport {
  int lie_dimension = 0;
  std::vector<Mat> lie_basis;  // orthonormal under the Frobenius inner product
  Vec singular_values;         // full spectrum, descending, for tolerance audits
};

// Null space of the m^3 x m^2 matrix of the infinitesimal action, by full
// SVD. The entire spectrum is reported so callers can assert a spectral gap
// around the rank decision.
inline StabilizerReport stabilizer_lie_algebra(const Christoffel& g,
                                               double tol_rank = 1e-8) {
  if (!(tol_rank > 0.0 && tol_rank < 1.0))
    throw BadParams("stabilizer_lie_algebra: tol_rank must be in (0,1)");
  const int m = g.m;
  const int n2 = m * m;
  Mat action(m * m * m, n2);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) {
      Mat xi(m, m);
      xi(a, i) = 1.0;
      Christoffel dg = infinitesimal_action(xi, g);
      const int col = a * m + i;
      for (size_t r = 0; r < dg.coeffs.size(); ++r)
        action(static_cast<int>(r), col) = dg.coeffs[r];
    }
  SvdRight svd = svd_right(action);
  StabilizerReport rep;
  rep.singular_values = svd.sigma;
  const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
  for (int j = 0; j < n2; ++j) {
    if (svd.sigma[j] <= tol_rank * smax) {
      Mat basis(m, m);
      for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i) basis(a, i) = svd.v(a * m + i, j);
      rep.lie_basis.push_back(std::move(basis));
    }
  }
  rep.lie_dimension = static_cast<int>(rep.lie_basis.size());
  return rep;
}

// Orientation-preserving fixed-point test: act(A, G) = G and det A > 0.
inline bool is_fixed(const LinearMap& map, const Christoffel& g, double tol = -1.0,
                     const Tolerances& cfg = default_tolerances()) {
  if (tol < 0.0) tol = cfg.fixed_rel * (1.0 + g.max_abs());
  const double d = determinant(map.entries);
  if (!(std::abs(d) > cfg.det)) throw SingularMap("is_fixed: singular map");
  if (d <= 0.0) return false;
  Christoffel moved = act(map, g, cfg);
  double err = 0.0;
  for (size_t i = 0; i < moved.coeffs.size(); ++i)
    err = std::max(err, std::abs(moved.coeffs[i] - g.coeffs[i]));
  return err <= tol;
}

// Smallest n <= max_order with A^n = I, or nullopt when no power returns.
inline std::optional<int> order_of(const LinearMap& map, int max_order = 256,
                                   double tol = 1e-9) {
  if (max_order < 1) throw BadParams("order_of: max_order must be >= 1");
  const int m = map.dim();
  const double d = determinant(map.entries);
  if (std::abs(d) <= 1e-12) throw SingularMap("order_of: singular map");
  Mat p = map.entries;
  for (int n = 1; n <= max_order; ++n) {
    double err = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        err = std::max(err, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    if (err <= tol) return n;
    p = matmul(p, map.entries);
  }
  return std::nullopt;
}

inline LinearMap rotation_2d(double theta) {
  Mat r(2, 2);
  r(0, 0) = std::cos(theta);
  r(0, 1) = std::sin(theta);
  r(1, 0) = -std::sin(theta);
  r(1, 1) = std::cos(theta);
  return LinearMap(std::move(r));
}

// Rotation in the e1-e2 plane, identity on e3.
inline LinearMap rotation_3d(double theta) {
  Mat r = Mat::identity(3);
  r(0, 0) = std::cos(theta);
  r(0, 1) = std::sin(theta);
  r(1, 0) = -std::sin(theta);
  r(1, 1) = std::cos(theta);
  return LinearMap(std::move(r));
}

// diag(a, 1/a, 1, ..., 1); det = 1 for every nonzero a.
inline LinearMap hyperbolic_diag(int m, double a) {
  if (a == 0.0) throw ZeroParameter("hyperbolic: parameter must be nonzero");
  Mat r = Mat::identity(m);
  r(0, 0) = a;
  r(1, 1) = 1.0 / a;
  return LinearMap(std::move(r));
}

inline LinearMap hyperbolic(double a) { return hyperbolic_diag(3, a); }

// S_j: e_i -> e_i for i == j, e_i -> -e_i otherwise (m = 3, axis 1-based).
inline LinearMap sign_flip(int axis) {
  if (axis < 1 || axis > 3) throw BadParams("sign_flip: axis must be 1..3");
  Mat r = Mat::identity(3);
  for (int i = 0; i < 3; ++i)
    if (i != axis - 1) r(i, i) = -1.0;
  return LinearMap(std::move(r));
}

enum class ExceptionalGroup { s3, a4 };

namespace detail {

inline bool contains_map(const std::vector<LinearMap>& els, const Mat& c, double tol) {
  for (const LinearMap& e : els) {
    double d = 0.0;
    for (size_t i = 0; i < c.a.size(); ++i)
      d = std::max(d, std::abs(c.a[i] - e.entries.a[i]));
    if (d < tol) return true;
  }
  return false;
}

// Closure of a generating set under multiplication, deduplicated in max norm.
inline std::vector<LinearMap> group_closure(std::vector<LinearMap> els,
                                            size_t max_size, double tol = 1e-10) {
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t n = els.size();
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        Mat c = matmul(els[a].entries, els[b].entries);
        if (!contains_map(els, c, tol)) {
          els.push_back(LinearMap(std::move(c)));
          grew = true;
          if (els.size() > max_size)
            throw Error("group_closure: generated set exceeded expected size");
        }
      }
  }
  return els;
}

}  // namespace detail

// The two exceptional finite groups realized by 3-dimensional torsion-free
// structures: order 6 generated by the order-3 rotation and an axis flip, and
// order 12 generated by the same rotation and the reflection-pair element
// with first column (1/3, 0, -2*sqrt(2)/3).
inline std::vector<LinearMap> exceptional_group_elements(ExceptionalGroup which) {
  const double two_pi_3 = 2.0 * 3.14159265358979323846 / 3.0;
  std::vector<LinearMap> gens;
  gens.push_back(LinearMap::identity(3));
  gens.push_back(rotation_3d(two_pi_3));
  if (which == ExceptionalGroup::s3) {
    Mat s = Mat::identity(3);
    s(1, 1) = -1.0;
    s(2, 2) = -1.0;
    gens.push_back(LinearMap(std::move(s)));
    return detail::group_closure(std::move(gens), 6);
  }
  const double x = 1.0 / 3.0;
  const double y = -2.0 * std::sqrt(2.0) / 3.0;
  Mat s(3, 3);
  s(0, 0) = x;
  s(2, 0) = y;
  s(1, 1) = -1.0;
  s(0, 2) = y;
  s(2, 2) = -x;
  gens.push_back(LinearMap(std::move(s)));
  return detail::group_closure(std::move(gens), 12);
}

// Gram-Schmidt style normalization: returns S with
// symmetric_ricci(act(S, G)) = diag(-1, ..., -1, +1, ..., +1), negative block
// first, det S > 0. Column signs are free for a pseudo-orthonormal frame, so
// an orientation flip is always available without reordering the blocks.
inline LinearMap ricci_normalizer(const Christoffel& g,
                                  const Tolerances& cfg = default_tolerances()) {
  const SymForm rho = symmetric_ricci(g);
  const Signature sig = signature(rho, cfg.signature_rel, cfg.signature_abs);
  if (sig.degenerate)
    throw DegenerateRicci("ricci_normalizer: symmetric Ricci form is degenerate");
  EigenSym e = jacobi_eigen(rho.entries);  // ascending: negatives already first
  const int m = g.m;
  Mat s(m, m);
  for (int j = 0; j < m; ++j) {
    const double scale = 1.0 / std::sqrt(std::abs(e.values[j]));
    for (int i = 0; i < m; ++i) s(i, j) = e.vectors(i, j) * scale;
  }
  if (determinant(s) < 0.0) {
    for (int i = 0; i < m; ++i) s(i, m - 1) = -s(i, m - 1);
  }
  return LinearMap(std::move(s));
}

// theta_{ijk} = 1 iff |Gamma_{ij}^k| > tol.
struct SupportPattern {
  int m = 0;
  std::vector<std::uint8_t> theta;  // m^3 entries, (i,j,k) row-major

  bool at(int i, int j, int k) const {
    return theta[(static_cast<size_t>(i) * m + j) * m + k] != 0;
  }
};

inline SupportPattern support_pattern(const Christoffel& g, double tol = 1e-10) {
  if (!(tol > 0.0)) throw BadParams("support_pattern: tol must be positive");
  SupportPattern p;
  p.m = g.m;
  p.theta.resize(g.coeffs.size());
  for (size_t i = 0; i < g.coeffs.size(); ++i)
    p.theta[i] = std::abs(g.coeffs[i]) > tol ? 1 : 0;
  return p;
}

// Additive form of the multiplicative relations k_i k_j = k_k on the support:
// one row e_i + e_j - e_k per set bit.
struct RelationLattice {
  int m = 0;
  std::vector<std::vector<long long>> relations;
};

inline RelationLattice relation_lattice(const SupportPattern& p) {
  RelationLattice lat;
  lat.m = p.m;
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j)
      for (int k = 0; k < p.m; ++k)
        if (p.at(i, j, k)) {
          std::vector<long long> row(p.m, 0);
          row[i] += 1;
          row[j] += 1;
          row[k] -= 1;
          lat.relations.push_back(std::move(row));
        }
  return lat;
}

namespace detail {

inline long long checked_mul(long long a, long long b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX / 2 || p < INT64_MIN / 2)
    throw IntegerOverflow("smith normal form: intermediate overflow");
  return static_cast<long long>(p);
}

}  // namespace detail

// Exact Smith normal form over the integers. Returns the nonzero invariant
// factors d_1 | d_2 | ... The relation entries stay tiny, but every product
// is guarded anyway.
inline std::vector<long long> smith_invariant_factors(
    std::vector<std::vector<long long>> a, int cols) {
  const int rows = static_cast<int>(a.size());
  std::vector<long long> factors;
  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero magnitude in the trailing block
    int pi = -1, pj = -1;
    long long best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < best)) {
          best = std::llabs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          const long long q = a[i][t] / a[t][t];
          for (int j = t; j < cols; ++j)
            a[i][j] -= detail::checked_mul(q, a[t][j]);
          if (a[i][t] != 0) {
            std::swap(a[t], a[i]);
            clean = false;
          }
        }
      for (int j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          const long long q = a[t][j] / a[t][t];
          for (int i = t; i < rows; ++i)
            a[i][j] -= detail::checked_mul(q, a[i][t]);
          if (a[t][j] != 0) {
            for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
            clean = false;
          }
        }
      if (!clean) continue;
      // divisibility: pivot must divide the trailing block
      for (int i = t + 1; i < rows && clean; ++i)
        for (int j = t + 1; j < cols && clean; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (int jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            clean = false;
          }
    }
    ++t;
  }
  for (int i = 0; i < t; ++i)
    if (a[i][i] != 0) factors.push_back(std::llabs(a[i][i]));
  std::sort(factors.begin(), factors.end());
  return factors;
}

// Largest invariant factor of the relation lattice; bounds the order of any
// finite-order symmetry whose eigenvalue pattern embeds in the support group.
// 1 when the quotient is free (no torsion).
inline long long torsion_order_bound(const SupportPattern& p) {
  RelationLattice lat = relation_lattice(p);
  if (lat.relations.empty()) return 1;
  std::vector<long long> f = smith_invariant_factors(lat.relations, lat.m);
  long long bound = 1;
  for (long long d : f) bound = std::max(bound, d);
  return bound;
}

namespace detail {

struct ScanFrame {
  int m = 0;
  int p = 0, q = 0;
  int dim = 0;                          // m(m-1)/2 chart parameters
  std::vector<std::pair<int, int>> ij;  // antisymmetric index pairs
  Mat eta;                              // canonical diag(-1..-1, +1..+1)
  std::vector<Mat> branches;            // connected-component representatives
};

inline Mat scan_generator(const ScanFrame& fr, const Vec& k) {
  Mat kk(fr.m, fr.m);
  for (int t = 0; t < fr.dim; ++t) {
    const auto [i, j] = fr.ij[t];
    kk(i, j) = k[t];
    kk(j, i) = -k[t];
  }
  return matmul(fr.eta, kk);
}

}  // namespace detail

// Best-effort search for orientation-preserving finite symmetries. Sound but
// only probabilistically complete: minimizes |act(A, G') - G'|^2 over the
// isometry group of the normalized Ricci form (chart: exponential of the
// Lie algebra, times a component representative when the group is
// disconnected), keeps zero-residual minimizers, and conjugates them back.
// Results are sorted lexicographically and deduplicated, so the output is a
// deterministic function of (G, restarts, seed).
inline std::vector<LinearMap> finite_symmetry_scan(
    const Christoffel& g, int restarts, std::uint64_t seed,
    const Tolerances& cfg = default_tolerances()) {
  const int m = g.m;
  const LinearMap normalizer = ricci_normalizer(g, cfg);
  const Christoffel gn = act(normalizer, g, cfg);
  const Signature sig = signature(symmetric_ricci(g), cfg.signature_rel, cfg.signature_abs);

  detail::ScanFrame fr;
  fr.m = m;
  fr.p = sig.p;
  fr.q = sig.q;
  fr.eta = Mat::identity(m);
  for (int i = 0; i < sig.p; ++i) fr.eta(i, i) = -1.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) fr.ij.emplace_back(i, j);
  fr.dim = static_cast<int>(fr.ij.size());
  fr.branches.push_back(Mat::identity(m));
  if (sig.p >= 1 && sig.q >= 1) {
    // det +1 representative of the non-identity component: flip one timelike
    // and one spacelike axis
    Mat b = Mat::identity(m);
    b(0, 0) = -1.0;
    b(sig.p, sig.p) = -1.0;
    fr.branches.push_back(std::move(b));
  }

  const double scale = 1.0 + gn.max_abs();
  const Mat ninv = inverse(normalizer.entries, cfg.det);

  const auto residual = [&](const Mat& branch, const Vec& k, Christoffel* moved_out) {
    Mat a = matmul(branch, matexp(detail::scan_generator(fr, k)));
    Christoffel moved = act(LinearMap(a), gn, cfg);
    Vec r(moved.coeffs.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = moved.coeffs[i] - gn.coeffs[i];
    if (moved_out) *moved_out = std::move(moved);
    return r;
  };

  std::vector<LinearMap> found;
  const size_t nbranch = fr.branches.size();
  for (int restart = 0; restart < restarts; ++restart) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    const Mat& branch = fr.branches[restart % nbranch];
    Vec k(fr.dim, 0.0);
    // the first start per branch sits at the chart origin so the identity
    // component's trivial solution is always recovered
    if (restart >= static_cast<int>(nbranch))
      for (double& v : k) v = rng.uniform(-3.0, 3.0);

    // Levenberg-Marquardt with a forward-difference Jacobian
    Vec r = residual(branch, k, nullptr);
    double f = 0.0;
    for (double v : r) f += v * v;
    double lambda = 1e-3;
    for (int iter = 0; iter < 60 && f > 1e-26; ++iter) {
      Mat jac(static_cast<int>(r.size()), fr.dim);
      const double h = 1e-7;
      for (int t = 0; t < fr.dim; ++t) {
        Vec k2 = k;
        k2[t] += h;
        Vec r2 = residual(branch, k2, nullptr);
        for (size_t i = 0; i < r.size(); ++i)
          jac(static_cast<int>(i), t) = (r2[i] - r[i]) / h;
      }
      Vec grad(fr.dim, 0.0);
      Mat hess(fr.dim, fr.dim);
      for (int t = 0; t < fr.dim; ++t) {
        for (size_t i = 0; i < r.size(); ++i)
          grad[t] += jac(static_cast<int>(i), t) * r[i];
        for (int u = t; u < fr.dim; ++u) {
          double s = 0.0;
          for (size_t i = 0; i < r.size(); ++i)
            s += jac(static_cast<int>(i), t) * jac(static_cast<int>(i), u);
          hess(t, u) = s;
          hess(u, t) = s;
        }
      }
      bool stepped = false;
      for (int damp = 0; damp < 12; ++damp) {
        Mat hd = hess;
        for (int t = 0; t < fr.dim; ++t) hd(t, t) += lambda;
        LuFactor lu = lu_factor(hd);
        if (lu.singular) {
          lambda *= 10.0;
          continue;
        }
        Vec delta = lu_solve(lu, grad);
        Vec k2 = k;
        for (int t = 0; t < fr.dim; ++t) k2[t] -= delta[t];
        Vec r2 = residual(branch, k2, nullptr);
        double f2 = 0.0;
        for (double v : r2) f2 += v * v;
        if (f2 < f) {
          k = std::move(k2);
          r = std::move(r2);
          f = f2;
          lambda = std::max(lambda * 0.3, 1e-12);
          stepped = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!stepped) break;
    }

    if (max_abs(r) < cfg.scan_residual * scale) {
      Mat a = matmul(branch, matexp(detail::scan_generator(fr, k)));
      Mat t = matmul(normalizer.entries, matmul(a, ninv));
      found.push_back(LinearMap(std::move(t)));
    }
  }

  std::sort(found.begin(), found.end(), [](const LinearMap& x, const LinearMap& y) {
    return std::lexicographical_compare(x.entries.a.begin(), x.entries.a.end(),
                                        y.entries.a.begin(), y.entries.a.end());
  });
  std::vector<LinearMap> unique;
  for (LinearMap& f : found) {
    if (!detail::contains_map(unique, f.entries, cfg.scan_dedup))
      unique.push_back(std::move(f));
  }
  return unique;
}

}  // namespace affine_moduli
