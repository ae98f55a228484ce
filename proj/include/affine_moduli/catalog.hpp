#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affine_moduli/curvature.hpp"
#include "affine_moduli/errors.hpp"
#include "affine_moduli/symmetry.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli::catalog {

enum class FamilyId {
  gamma2,
  planar_x,
  model3d,
  spiral3d,
  chained,
  family1,
  family2,
  family3,
  family3_s3,
  family3_a4,
  family4a,
  family4b,
  thm19_witness,
};

inline const std::vector<std::pair<FamilyId, const char*>>& family_names() {
  static const std::vector<std::pair<FamilyId, const char*>> names = {
      {FamilyId::gamma2, "gamma2"},         {FamilyId::planar_x, "planar-x"},
      {FamilyId::model3d, "model3d"},       {FamilyId::spiral3d, "spiral3d"},
      {FamilyId::chained, "chained"},       {FamilyId::family1, "family1"},
      {FamilyId::family2, "family2"},       {FamilyId::family3, "family3"},
      {FamilyId::family3_s3, "family3-s3"}, {FamilyId::family3_a4, "family3-a4"},
      {FamilyId::family4a, "family4a"},     {FamilyId::family4b, "family4b"},
      {FamilyId::thm19_witness, "thm19"},
  };
  return names;
}

inline const char* family_name(FamilyId id) {
  for (const auto& [fid, name] : family_names())
    if (fid == id) return name;
  throw UnknownFamily("family_name: unknown id");
}

inline std::optional<FamilyId> family_from_name(const std::string& name) {
  for (const auto& [fid, n] : family_names())
    if (name == n) return fid;
  return std::nullopt;
}

// Complex coefficient tensor on a basis in which selected index pairs (i, j)
// are conjugate: f_i = e_i + sqrt(-1) e_j, f_j = e_i - sqrt(-1) e_j, with the
// dual pair f^i = (e^i - sqrt(-1) e^j)/2, f^j = (e^i + sqrt(-1) e^j)/2.
// Unpaired indices stay real.
struct ComplexChristoffel {
  int m = 0;
  std::vector<std::complex<double>> coeffs;

  explicit ComplexChristoffel(int dim)
      : m(dim), coeffs(static_cast<size_t>(dim) * dim * dim) {}

  std::complex<double>& at(int i, int j, int k) {
    return coeffs[(static_cast<size_t>(i) * m + j) * m + k];
  }
  std::complex<double> at(int i, int j, int k) const {
    return coeffs[(static_cast<size_t>(i) * m + j) * m + k];
  }
};

// Change of basis back to the underlying real frame. Conjugate-partner
// entries may be given on one side only; they are filled in, and supplying
// both sides inconsistently is an error.
inline Christoffel realify(ComplexChristoffel cc,
                           const std::vector<std::pair<int, int>>& conj_pairs) {
  using cd = std::complex<double>;
  const int m = cc.m;
  std::vector<int> sigma(m);
  for (int i = 0; i < m; ++i) sigma[i] = i;
  for (const auto& [i, j] : conj_pairs) {
    if (i < 0 || j < 0 || i >= m || j >= m || i == j)
      throw BadParams("realify: invalid conjugate pair");
    sigma[i] = j;
    sigma[j] = i;
  }
  double scale = 0.0;
  for (const cd& v : cc.coeffs) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * (1.0 + scale);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const cd v = cc.at(a, b, c);
        cd& w = cc.at(sigma[a], sigma[b], sigma[c]);
        if (std::abs(v) <= tol && std::abs(w) <= tol) continue;
        if (std::abs(w) <= tol) {
          w = std::conj(v);
        } else if (std::abs(w - std::conj(v)) > tol) {
          throw ConjugationMismatch("realify: entry and conjugate partner disagree");
        }
      }

  // columns of basis: e-basis vectors in f-coordinates; inv: f in e-coordinates
  std::vector<cd> basis(static_cast<size_t>(m) * m, cd(0.0, 0.0));
  std::vector<cd> inv(static_cast<size_t>(m) * m, cd(0.0, 0.0));
  const auto B = [&](int r, int c) -> cd& { return basis[static_cast<size_t>(r) * m + c]; };
  const auto Binv = [&](int r, int c) -> cd& { return inv[static_cast<size_t>(r) * m + c]; };
  for (int i = 0; i < m; ++i) {
    B(i, i) = 1.0;
    Binv(i, i) = 1.0;
  }
  for (const auto& [i, j] : conj_pairs) {
    B(i, i) = 0.5;
    B(j, i) = 0.5;
    B(i, j) = cd(0.0, -0.5);
    B(j, j) = cd(0.0, 0.5);
    Binv(i, i) = 1.0;
    Binv(j, i) = cd(0.0, 1.0);
    Binv(i, j) = 1.0;
    Binv(j, j) = cd(0.0, -1.0);
  }

  std::vector<cd> t1(cc.coeffs.size()), t2(cc.coeffs.size());
  const auto idx = [m](int i, int j, int k) {
    return (static_cast<size_t>(i) * m + j) * m + k;
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        cd s = 0.0;
        for (int c = 0; c < m; ++c) s += cc.at(a, b, c) * Binv(k, c);
        t1[idx(a, b, k)] = s;
      }
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        cd s = 0.0;
        for (int b = 0; b < m; ++b) s += t1[idx(a, b, k)] * B(b, j);
        t2[idx(a, j, k)] = s;
      }
  std::vector<double> out(cc.coeffs.size());
  double imag_resid = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        cd s = 0.0;
        for (int a = 0; a < m; ++a) s += t2[idx(a, j, k)] * B(a, i);
        imag_resid = std::max(imag_resid, std::abs(s.imag()));
        out[idx(i, j, k)] = s.real();
      }
  if (imag_resid > 1e-12 * (1.0 + scale))
    throw ConjugationMismatch("realify: result has a non-real residue");
  return Christoffel(m, std::move(out));
}

// Block-diagonal assembly; coefficients vanish unless all three indices lie
// in a single summand.
inline Christoffel direct_sum(const std::vector<Christoffel>& parts) {
  if (parts.empty()) throw EmptyList("direct_sum: empty list");
  int m = 0;
  for (const Christoffel& g : parts) m += g.m;
  Christoffel out(m);
  int off = 0;
  for (const Christoffel& g : parts) {
    for (int i = 0; i < g.m; ++i)
      for (int j = 0; j < g.m; ++j)
        for (int k = 0; k < g.m; ++k)
          out.at(off + i, off + j, off + k) = g.at(i, j, k);
    off += g.m;
  }
  return out;
}

namespace detail {

inline void set_sym(Christoffel& g, int i, int j, int k, double v) {
  g.at(i, j, k) = v;
  g.at(j, i, k) = v;
}

inline double check_nonzero(double v, const char* what) {
  if (std::abs(v) <= 1e-12) throw BadParams(std::string("constraint violated: ") + what);
  return v;
}

inline void expect_params(const std::vector<double>& p, size_t n, const char* family) {
  if (p.size() != n)
    throw BadParams(std::string(family) + ": expected " + std::to_string(n) +
                    " parameter(s), got " + std::to_string(p.size()));
}

// The 3-dimensional block common to the chained construction: coefficients on
// the conjugate basis (f1, f2 = conj, f3 real), local indices 0..2.
inline void spiral_block(ComplexChristoffel& cc, int o, int next_o, double a,
                         bool with_link) {
  cc.at(o + 0, o + 2, o + 0) = a;
  cc.at(o + 2, o + 0, o + 0) = a;
  cc.at(o + 1, o + 2, o + 1) = a;
  cc.at(o + 2, o + 1, o + 1) = a;
  cc.at(o + 0, o + 1, o + 2) = a;
  cc.at(o + 1, o + 0, o + 2) = a;
  cc.at(o + 2, o + 2, o + 2) = (a * a + 1.0) / a;
  if (with_link) {
    cc.at(o + 0, o + 0, next_o + 0) = 1.0;
    cc.at(o + 1, o + 1, next_o + 1) = 1.0;
  }
}

inline std::vector<double> chained_weights(const std::vector<double>& params) {
  if (params.empty()) throw BadParams("chained: expected [ell] or [ell, a_1..a_ell]");
  const double ell_d = params[0];
  const int ell = static_cast<int>(std::lround(ell_d));
  if (std::abs(ell_d - ell) > 1e-9 || ell < 2)
    throw BadParams("chained: ell must be an integer >= 2");
  std::vector<double> a;
  if (params.size() == 1) {
    for (int mu = 1; mu <= ell; ++mu) a.push_back(1.0 + mu / 10.0);
  } else {
    expect_params(params, static_cast<size_t>(ell) + 1, "chained");
    a.assign(params.begin() + 1, params.end());
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw BadParams("chained: weights must be positive");
    for (size_t j = i + 1; j < a.size(); ++j)
      if (std::abs(a[i] - a[j]) <= 1e-12)
        throw BadParams("chained: weights must be distinct");
  }
  return a;
}

inline ComplexChristoffel chained_complex(const std::vector<double>& weights) {
  const int ell = static_cast<int>(weights.size());
  ComplexChristoffel cc(3 * ell);
  for (int mu = 0; mu < ell; ++mu)
    spiral_block(cc, 3 * mu, 3 * ((mu + 1) % ell), weights[mu], true);
  return cc;
}

inline std::vector<std::pair<int, int>> block_pairs(int ell) {
  std::vector<std::pair<int, int>> pairs;
  for (int mu = 0; mu < ell; ++mu) pairs.emplace_back(3 * mu, 3 * mu + 1);
  return pairs;
}

}  // namespace detail

inline Christoffel thm19_witness(int p, int q);

inline Christoffel build(FamilyId id, const std::vector<double>& params = {}) {
  using detail::check_nonzero;
  using detail::expect_params;
  using detail::set_sym;
  switch (id) {
    case FamilyId::gamma2: {
      expect_params(params, 0, "gamma2");
      const double s = 1.0 / std::sqrt(2.0);
      Christoffel g(2);
      g.at(0, 0, 0) = s;
      set_sym(g, 0, 1, 1, -s);
      g.at(1, 1, 0) = -s;
      return g;
    }
    case FamilyId::planar_x: {
      expect_params(params, 1, "planar-x");
      const double x = check_nonzero(params[0], "planar-x: x != 0");
      Christoffel g(2);
      g.at(0, 0, 0) = x + 1.0 / x;
      set_sym(g, 0, 1, 1, x);
      g.at(1, 1, 0) = x;
      g.at(1, 1, 1) = 1.0;
      return g;
    }
    case FamilyId::model3d: {
      expect_params(params, 0, "model3d");
      Christoffel g(3);
      g.at(0, 0, 0) = 2.0;
      g.at(1, 1, 1) = 4.0;
      g.at(2, 2, 2) = 2.0;
      g.at(0, 0, 2) = 1.0;
      set_sym(g, 0, 2, 0, 1.0);
      set_sym(g, 1, 2, 1, 1.0);
      g.at(1, 1, 2) = 1.0;
      return g;
    }
    case FamilyId::spiral3d: {
      expect_params(params, 1, "spiral3d");
      if (!(params[0] > 0.0)) throw BadParams("spiral3d: a > 0 required");
      ComplexChristoffel cc(3);
      detail::spiral_block(cc, 0, 0, params[0], false);
      return realify(std::move(cc), {{0, 1}});
    }
    case FamilyId::chained: {
      const std::vector<double> w = detail::chained_weights(params);
      return realify(detail::chained_complex(w),
                     detail::block_pairs(static_cast<int>(w.size())));
    }
    case FamilyId::family1: {
      expect_params(params, 4, "family1");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      check_nonzero(a * d, "family1: ad != 0");
      check_nonzero(-b * b + b * d + c * (d - c), "family1: -b^2+bd+c(d-c) != 0");
      Christoffel g(3);
      set_sym(g, 0, 1, 2, a);
      set_sym(g, 0, 2, 0, b);
      set_sym(g, 1, 2, 1, c);
      g.at(2, 2, 2) = d;
      return g;
    }
    case FamilyId::family2: {
      expect_params(params, 4, "family2");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      check_nonzero(a * d, "family2: ad != 0");
      check_nonzero(b * d - b * b + c * c, "family2: bd-b^2+c^2 != 0");
      Christoffel g(3);
      g.at(0, 0, 2) = a;
      g.at(1, 1, 2) = a;
      set_sym(g, 0, 2, 0, b);
      set_sym(g, 0, 2, 1, c);
      set_sym(g, 1, 2, 0, -c);
      set_sym(g, 1, 2, 1, b);
      g.at(2, 2, 2) = d;
      return g;
    }
    case FamilyId::family3:
    case FamilyId::family3_s3:
    case FamilyId::family3_a4: {
      std::vector<double> p = params;
      if (id == FamilyId::family3_s3) {
        expect_params(params, 0, "family3-s3");
        p = {0.0, 0.0, 1.0, 0.0};
      } else if (id == FamilyId::family3_a4) {
        expect_params(params, 0, "family3-a4");
        const double r = 1.0 / std::sqrt(2.0);
        p = {r, r, 0.0, -std::sqrt(2.0)};
      }
      expect_params(p, 4, "family3");
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      check_nonzero(a * d - 2.0, "family3: ad-2 != 0");
      check_nonzero(-b * b + c * c + b * d, "family3: -b^2+c^2+bd != 0");
      Christoffel g(3);
      g.at(0, 0, 0) = 1.0;
      set_sym(g, 0, 1, 1, -1.0);
      g.at(1, 1, 0) = -1.0;
      g.at(0, 0, 2) = a;
      g.at(1, 1, 2) = a;
      set_sym(g, 0, 2, 0, b);
      set_sym(g, 0, 2, 1, c);
      set_sym(g, 1, 2, 0, -c);
      set_sym(g, 1, 2, 1, b);
      g.at(2, 2, 2) = d;
      return g;
    }
    case FamilyId::family4a: {
      expect_params(params, 0, "family4a");
      Christoffel g(3);
      set_sym(g, 0, 1, 2, 1.0);
      set_sym(g, 0, 2, 1, 1.0);
      set_sym(g, 1, 2, 0, -1.0);
      return g;
    }
    case FamilyId::family4b: {
      expect_params(params, 8, "family4b");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      const double e = params[4], f = params[5], gg = params[6], h = params[7];
      const double r11 = -2.0 * b * d + a * (-c + gg + h);
      const double r12 = -d * e - a * f + b * h;
      const double r22 = e * (c - gg + h) - 2.0 * b * f;
      const double r33 = -c * c - 2.0 * d * f + c * h + gg * (h - gg);
      check_nonzero(r33 * (r11 * r22 - r12 * r12), "family4b: det(ricci) != 0");
      Christoffel g(3);
      g.at(0, 0, 2) = a;
      set_sym(g, 0, 1, 2, b);
      set_sym(g, 0, 2, 0, c);
      set_sym(g, 0, 2, 1, d);
      g.at(1, 1, 2) = e;
      set_sym(g, 1, 2, 0, f);
      set_sym(g, 1, 2, 1, gg);
      g.at(2, 2, 2) = h;
      return g;
    }
    case FamilyId::thm19_witness: {
      expect_params(params, 2, "thm19");
      const int p = static_cast<int>(std::lround(params[0]));
      const int q = static_cast<int>(std::lround(params[1]));
      return thm19_witness(p, q);
    }
  }
  throw UnknownFamily("build: unknown family id");
}

// Closed-form Ricci tensors, evaluated independently of the curvature
// module. These are the oracle side of the identity
// ricci(build(id, p)) == expected_ricci(id, p).
inline SymForm expected_ricci(FamilyId id, const std::vector<double>& params = {}) {
  using detail::expect_params;
  const auto diag3 = [](double x, double y, double z) {
    Mat r(3, 3);
    r(0, 0) = x;
    r(1, 1) = y;
    r(2, 2) = z;
    return SymForm(std::move(r));
  };
  switch (id) {
    case FamilyId::gamma2: {
      expect_params(params, 0, "gamma2");
      Mat r(2, 2);
      r(0, 0) = -1.0;
      r(1, 1) = -1.0;
      return SymForm(std::move(r));
    }
    case FamilyId::planar_x: {
      expect_params(params, 1, "planar-x");
      detail::check_nonzero(params[0], "planar-x: x != 0");
      return SymForm(Mat::identity(2));
    }
    case FamilyId::model3d:
      expect_params(params, 0, "model3d");
      return diag3(2.0, 2.0, 2.0);
    case FamilyId::spiral3d: {
      expect_params(params, 1, "spiral3d");
      const double a = params[0];
      if (!(a > 0.0)) throw BadParams("spiral3d: a > 0 required");
      return diag3(0.5 * (a * a + 1.0), 0.5 * (a * a + 1.0), 2.0);
    }
    case FamilyId::family1: {
      expect_params(params, 4, "family1");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      Mat r(3, 3);
      r(0, 1) = a * d;
      r(1, 0) = a * d;
      r(2, 2) = -b * b + b * d + c * (d - c);
      return SymForm(std::move(r));
    }
    case FamilyId::family2: {
      expect_params(params, 4, "family2");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      return diag3(a * d, a * d, 2.0 * (b * d - b * b + c * c));
    }
    case FamilyId::family3: {
      expect_params(params, 4, "family3");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      return diag3(a * d - 2.0, a * d - 2.0, 2.0 * (b * d - b * b + c * c));
    }
    case FamilyId::family3_s3:
      expect_params(params, 0, "family3-s3");
      return diag3(-2.0, -2.0, 2.0);
    case FamilyId::family3_a4:
      expect_params(params, 0, "family3-a4");
      return diag3(-3.0, -3.0, -3.0);
    case FamilyId::family4a:
      expect_params(params, 0, "family4a");
      return diag3(-2.0, 2.0, 2.0);
    case FamilyId::family4b: {
      expect_params(params, 8, "family4b");
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      const double e = params[4], f = params[5], gg = params[6], h = params[7];
      Mat r(3, 3);
      r(0, 0) = -2.0 * b * d + a * (-c + gg + h);
      r(0, 1) = -d * e - a * f + b * h;
      r(1, 0) = r(0, 1);
      r(1, 1) = e * (c - gg + h) - 2.0 * b * f;
      r(2, 2) = -c * c - 2.0 * d * f + c * h + gg * (h - gg);
      return SymForm(std::move(r));
    }
    case FamilyId::chained:
      throw NoClosedForm("chained: Ricci tensor is evaluated numerically");
    case FamilyId::thm19_witness:
      throw NoClosedForm("thm19: Ricci tensor is evaluated numerically");
  }
  throw UnknownFamily("expected_ricci: unknown family id");
}

// Example parameters used by the verification suite and the CLI when a
// family's parameters are omitted.
inline std::vector<double> default_params(FamilyId id) {
  switch (id) {
    case FamilyId::planar_x:
      return {1.0};
    case FamilyId::spiral3d:
      return {1.0};
    case FamilyId::chained:
      return {2.0};
    case FamilyId::family1:
    case FamilyId::family2:
    case FamilyId::family3:
      return {1.0, 1.0, 1.0, 3.0};
    case FamilyId::family4b:
      return {1.0, 0.5, 1.0, 0.25, -1.0, 0.5, 0.75, 2.0};
    case FamilyId::thm19_witness:
      return {1.0, 2.0};
    default:
      return {};
  }
}

// Block rotation fixing the chained structure: angles double from block to
// block, closing up after ell steps, so the order is exactly 2^ell - 1.
inline LinearMap chained_symmetry(int ell) {
  if (ell < 2) throw BadParams("chained_symmetry: ell must be >= 2");
  const int m = 3 * ell;
  const long long n = (1ll << ell) - 1;
  Mat t = Mat::identity(m);
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (int mu = 0; mu < ell; ++mu) {
    const long long rot = (1ll << mu) % n;
    const double theta = two_pi * static_cast<double>(rot) / static_cast<double>(n);
    const int o = 3 * mu;
    t(o, o) = std::cos(theta);
    t(o, o + 1) = std::sin(theta);
    t(o + 1, o) = -std::sin(theta);
    t(o + 1, o + 1) = std::cos(theta);
  }
  return LinearMap(std::move(t));
}

// Support of the chained structure on its conjugate basis, where the
// order-bound relations are sharp.
inline SupportPattern chained_support(int ell) {
  if (ell < 2) throw BadParams("chained_support: ell must be >= 2");
  std::vector<double> w;
  for (int mu = 1; mu <= ell; ++mu) w.push_back(1.0 + mu / 10.0);
  ComplexChristoffel cc = detail::chained_complex(w);
  SupportPattern p;
  p.m = cc.m;
  p.theta.resize(cc.coeffs.size());
  for (size_t i = 0; i < cc.coeffs.size(); ++i)
    p.theta[i] = std::abs(cc.coeffs[i]) > 1e-12 ? 1 : 0;
  return p;
}

// Structure of signature (p, q) whose symmetry group contains the
// non-compact one-parameter family diag(alpha, 1/alpha, 1, ..., 1): a
// 3-dimensional hyperbolic-invariant base extended by diagonal entries on the
// remaining axes. Parameters come from a small deterministic search verified
// through the curvature module.
inline Christoffel thm19_witness(int p, int q) {
  if (p < 1 || q < 1 || p + q < 3)
    throw BadParams("thm19: requires p >= 1, q >= 1, p + q >= 3");
  const int m = p + q;
  static const double candidates[][3] = {
      {0.0, 1.0, 2.0}, {0.0, 1.0, -2.0}, {1.0, 0.0, 2.0},
      {1.0, 0.0, -2.0}, {0.0, 2.0, 1.0}, {1.0, 1.0, 3.0},
  };
  for (const auto& bcd : candidates) {
    const double a = 1.0, b = bcd[0], c = bcd[1], d = bcd[2];
    const double w = -b * b + b * d + c * (d - c);
    const double trace3 = b + c + d;  // scale of the extension axes' Ricci
    if (std::abs(a * d) <= 1e-12 || std::abs(w) <= 1e-12 || std::abs(trace3) <= 1e-12)
      continue;
    int negs = p - 1, poss = q - 1;  // hyperbolic pair supplies one of each
    if (w < 0.0)
      --negs;
    else
      --poss;
    if (negs < 0 || poss < 0 || negs + poss != m - 3) continue;
    Christoffel g(m);
    detail::set_sym(g, 0, 1, 2, a);
    detail::set_sym(g, 0, 2, 0, b);
    detail::set_sym(g, 1, 2, 1, c);
    g.at(2, 2, 2) = d;
    for (int u = 3; u < m; ++u) {
      const double eps = (negs > 0 ? -1.0 : 1.0) / trace3;
      if (negs > 0) --negs;
      g.at(u, u, 2) = eps;
    }
    const Signature sig = signature(symmetric_ricci(g));
    if (sig.p == p && sig.q == q && !sig.degenerate) return g;
  }
  throw BadParams("thm19: no candidate parameters realize the requested signature");
}

inline std::vector<FamilyId> all_families() {
  std::vector<FamilyId> ids;
  for (const auto& [fid, name] : family_names()) ids.push_back(fid);
  return ids;
}

}  // namespace affine_moduli::catalog
