#include <catch2/catch_amalgamated.hpp>

#include "affine_moduli/catalog.hpp"
#include "affine_moduli/curvature.hpp"
#include "affine_moduli/sampling.hpp"
#include "affine_moduli/tensor.hpp"

using namespace affine_moduli;

namespace {

double diff(const Christoffel& a, const Christoffel& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

LinearMap diag_map(std::vector<double> d) {
  Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return LinearMap(std::move(m));
}

}  // namespace

TEST_CASE("christoffel construction validates shape and finiteness") {
  CHECK_THROWS_AS(Christoffel(3, std::vector<double>(26, 0.0)), DimensionMismatch);
  std::vector<double> bad(27, 0.0);
  bad[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Christoffel(3, bad), NonFinite);
  CHECK_NOTHROW(Christoffel(3, std::vector<double>(27, 1.0)));
}

TEST_CASE("identity acts trivially") {
  SplitMix64 rng(11);
  for (int t = 0; t < 10; ++t) {
    Christoffel g = random_christoffel(3, rng, false);
    CHECK(diff(act(LinearMap::identity(3), g), g) < 1e-14);
  }
}

TEST_CASE("action pulls the symmetric ricci form back") {
  const Christoffel md = catalog::build(catalog::FamilyId::model3d);
  const LinearMap a = diag_map({2.0, 1.0, 1.0});
  // rho_s(model3d) = 2 id, so the pullback is diag(8, 2, 2)
  const SymForm moved = symmetric_ricci(act(a, md));
  const SymForm direct = act_on_form(a, symmetric_ricci(md));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(moved.entries(i, j) == Catch::Approx(direct.entries(i, j)).margin(1e-12));
      const double want = (i == j) ? (i == 0 ? 8.0 : 2.0) : 0.0;
      CHECK(moved.entries(i, j) == Catch::Approx(want).margin(1e-12));
    }
}

TEST_CASE("action composes as a right action") {
  SplitMix64 rng(12);
  for (int t = 0; t < 50; ++t) {
    Christoffel g = random_christoffel(3, rng, false);
    LinearMap a = random_linear_map(3, rng);
    LinearMap b = random_linear_map(3, rng);
    const Christoffel lhs = act(a, act(b, g));
    const Christoffel rhs = act(compose(b, a), g);
    CHECK(diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("action preserves the torsion-free condition") {
  SplitMix64 rng(13);
  for (int t = 0; t < 20; ++t) {
    Christoffel g = random_christoffel(4, rng, true);
    LinearMap a = random_linear_map(4, rng);
    CHECK(is_torsion_free(g));
    CHECK(is_torsion_free(act(a, g), 1e-9));
  }
}

TEST_CASE("action rejects singular and mismatched maps") {
  const Christoffel g = catalog::build(catalog::FamilyId::model3d);
  CHECK_THROWS_AS(act(diag_map({1.0, 1.0, 0.0}), g), SingularMap);
  CHECK_THROWS_AS(act(LinearMap::identity(2), g), DimensionMismatch);
}

TEST_CASE("form pullback basics") {
  SymForm s(Mat::identity(2));
  const SymForm moved = act_on_form(diag_map({2.0, 1.0}), s);
  CHECK(moved.entries(0, 0) == Catch::Approx(4.0));
  CHECK(moved.entries(1, 1) == Catch::Approx(1.0));
  CHECK(moved.entries(0, 1) == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(act_on_form(LinearMap::identity(3), s), DimensionMismatch);
}

TEST_CASE("form pullback multiplies determinants") {
  SplitMix64 rng(14);
  for (int t = 0; t < 50; ++t) {
    Mat raw(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) raw(i, j) = rng.uniform(-1.0, 1.0);
    TwoTensor sigma(std::move(raw));
    LinearMap a = random_linear_map(3, rng);
    const double lhs = determinant(act_on_form(a, sigma).entries);
    const double rhs = determinant(a.entries) * determinant(a.entries) *
                       determinant(sigma.entries);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9).margin(1e-12));
  }
}

TEST_CASE("torsion of a symmetric tensor vanishes") {
  for (catalog::FamilyId id : catalog::all_families()) {
    const Christoffel g = catalog::build(id, catalog::default_params(id));
    CHECK(torsion(g).max_abs() < 1e-14);
    CHECK(is_torsion_free(g));
  }
}

TEST_CASE("torsion picks out the antisymmetric part") {
  Christoffel g(2);
  g.at(0, 1, 0) = 1.0;  // asymmetric: the (2,1) partner stays zero
  const Christoffel t = torsion(g);
  CHECK(t.at(0, 1, 0) == Catch::Approx(1.0));
  CHECK(t.at(1, 0, 0) == Catch::Approx(-1.0));
  CHECK(is_torsion_free(g) == false);
  CHECK(is_torsion_free(Christoffel(3)));
}

TEST_CASE("torsion commutes with the action") {
  SplitMix64 rng(15);
  for (int t = 0; t < 30; ++t) {
    Christoffel g = random_christoffel(3, rng, false);
    LinearMap a = random_linear_map(3, rng);
    CHECK(diff(torsion(act(a, g)), act(a, torsion(g))) < 1e-10);
  }
}

TEST_CASE("symmetric forms are symmetrized exactly") {
  Mat raw(2, 2);
  raw(0, 1) = 1.0;
  raw(1, 0) = 3.0;
  SymForm s(std::move(raw));
  CHECK(s.entries(0, 1) == s.entries(1, 0));
  CHECK(s.entries(0, 1) == Catch::Approx(2.0));
}
