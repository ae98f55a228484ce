#include <catch2/catch_amalgamated.hpp>

#include "affine_moduli/catalog.hpp"
#include "affine_moduli/curvature.hpp"
#include "affine_moduli/sampling.hpp"

using namespace affine_moduli;

namespace {

double diff(const Mat& a, const Mat& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.a.size(); ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
  return d;
}

Mat diag(std::vector<double> v) {
  Mat m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = v[i];
  return m;
}

}  // namespace

TEST_CASE("curvature of the zero connection vanishes") {
  const CurvatureTensor r = curvature_operator(Christoffel(3));
  for (double v : r.r) CHECK(v == 0.0);
}

TEST_CASE("curvature is antisymmetric in the first index pair") {
  SplitMix64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const Christoffel g = random_christoffel(3, rng, false);
    const CurvatureTensor r = curvature_operator(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            CHECK(r.at(i, j, k, l) == Catch::Approx(-r.at(j, i, k, l)).margin(1e-12));
  }
}

TEST_CASE("tracing the curvature reproduces the ricci tensor") {
  SplitMix64 rng(22);
  for (int t = 0; t < 10; ++t) {
    const Christoffel g = random_christoffel(3, rng, false);
    const CurvatureTensor r = curvature_operator(g);
    const TwoTensor rho = ricci(g);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double tr = 0.0;
        for (int i = 0; i < 3; ++i) tr += r.at(i, j, k, i);
        CHECK(tr == Catch::Approx(rho.entries(j, k)).margin(1e-12));
      }
  }
}

TEST_CASE("ricci reproduces the catalog displays") {
  CHECK(diff(ricci(catalog::build(catalog::FamilyId::gamma2)).entries,
             diag({-1.0, -1.0})) < 1e-12);
  CHECK(diff(ricci(catalog::build(catalog::FamilyId::model3d)).entries,
             diag({2.0, 2.0, 2.0})) < 1e-12);
  CHECK(diff(ricci(catalog::build(catalog::FamilyId::family4a)).entries,
             diag({-2.0, 2.0, 2.0})) < 1e-12);
  for (double v : ricci(Christoffel(3)).entries.a) CHECK(v == 0.0);
}

TEST_CASE("ricci of a torsion-free tensor is symmetric") {
  SplitMix64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const TwoTensor rho = ricci(random_christoffel(3, rng, true));
    CHECK(diff(rho.entries, transpose(rho.entries)) < 1e-12);
  }
}

TEST_CASE("split reproduces the fixed displays and the difference identity") {
  const RicciSplit s = ricci_split(catalog::build(catalog::FamilyId::model3d));
  Mat rho2(3, 3);
  rho2(0, 0) = 6;
  rho2(0, 2) = 2;
  rho2(1, 1) = 18;
  rho2(1, 2) = 4;
  rho2(2, 0) = 2;
  rho2(2, 1) = 4;
  rho2(2, 2) = 6;
  CHECK(diff(s.rho2.entries, rho2) < 1e-12);
  CHECK(s.omega.components[0] == Catch::Approx(2.0));
  CHECK(s.omega.components[1] == Catch::Approx(4.0));
  CHECK(s.omega.components[2] == Catch::Approx(4.0));

  // planar family at x = 1; closed forms recomputed from the coefficient table
  const RicciSplit p = ricci_split(catalog::build(catalog::FamilyId::planar_x, {1.0}));
  Mat want(2, 2);
  want(0, 0) = 5;
  want(0, 1) = 1;
  want(1, 0) = 1;
  want(1, 1) = 3;
  CHECK(diff(p.rho2.entries, want) < 1e-12);
  CHECK(p.omega.components[0] == Catch::Approx(3.0));
  CHECK(p.omega.components[1] == Catch::Approx(1.0));

  SplitMix64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const Christoffel g = random_christoffel(3, rng, false);
    const RicciSplit sp = ricci_split(g);
    CHECK(diff(sp.rho1.entries - sp.rho2.entries, ricci(g).entries) < 1e-12);
  }
}

TEST_CASE("symmetric ricci is the symmetrization") {
  SplitMix64 rng(25);
  for (int t = 0; t < 10; ++t) {
    const Christoffel g = random_christoffel(3, rng, false);
    const Mat rho = ricci(g).entries;
    const Mat sym = symmetric_ricci(g).entries;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(sym(i, j) == Catch::Approx(0.5 * (rho(i, j) + rho(j, i))).margin(1e-14));
  }
  CHECK(diff(symmetric_ricci(catalog::build(catalog::FamilyId::planar_x, {0.7})).entries,
             Mat::identity(2)) < 1e-12);
}

TEST_CASE("signature counts eigenvalues with the timelike-first convention") {
  CHECK(signature(SymForm(diag({-2.0, -2.0, 2.0}))) == Signature{2, 1, false});
  Mat hyp(2, 2);
  hyp(0, 1) = 1.0;
  hyp(1, 0) = 1.0;
  CHECK(signature(SymForm(std::move(hyp))) == Signature{1, 1, false});
  CHECK(signature(SymForm(diag({0.0, 1.0, 1.0}))).degenerate);
  // substitution into the closed form for the rotation-invariant family
  const SymForm f2 = symmetric_ricci(catalog::build(catalog::FamilyId::family2, {1, 1, 1, 3}));
  CHECK(diff(f2.entries, diag({3.0, 3.0, 6.0})) < 1e-12);
  CHECK(signature(f2) == Signature{0, 3, false});

  Mat bad(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  SymForm s;
  s.entries = bad;  // bypass the constructor check to exercise the operation
  CHECK_THROWS_AS(signature(s), NonFinite);
}

TEST_CASE("jacobi eigen decomposition reconstructs the matrix") {
  SplitMix64 rng(26);
  for (int t = 0; t < 10; ++t) {
    Mat raw(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) raw(i, j) = rng.uniform(-1.0, 1.0);
    const SymForm s(std::move(raw));
    const EigenSym e = jacobi_eigen(s.entries);
    for (int j = 0; j < 4; ++j) {
      Vec col(4);
      for (int i = 0; i < 4; ++i) col[i] = e.vectors(i, j);
      const Vec av = matvec(s.entries, col);
      for (int i = 0; i < 4; ++i)
        CHECK(av[i] == Catch::Approx(e.values[j] * col[i]).margin(1e-10));
    }
  }
}
