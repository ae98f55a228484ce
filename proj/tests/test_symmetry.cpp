#include <catch2/catch_amalgamated.hpp>

#include "affine_moduli/catalog.hpp"
#include "affine_moduli/sampling.hpp"
#include "affine_moduli/symmetry.hpp"

using namespace affine_moduli;

namespace {

constexpr double kPi = 3.14159265358979323846;

double diff(const Christoffel& a, const Christoffel& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

}  // namespace

TEST_CASE("infinitesimal action basics") {
  const Christoffel g = catalog::build(catalog::FamilyId::model3d);
  CHECK(infinitesimal_action(Mat(3, 3), g).max_abs() == 0.0);
  // the identity generator scales with net weight 2 - 1 = 1
  CHECK(diff(infinitesimal_action(Mat::identity(3), g), g) < 1e-14);
  CHECK_THROWS_AS(infinitesimal_action(Mat(2, 2), g), DimensionMismatch);
}

TEST_CASE("infinitesimal action matches the finite difference of the action") {
  SplitMix64 rng(41);
  const double h = 1e-6;
  for (int t = 0; t < 10; ++t) {
    const Christoffel g = random_christoffel(3, rng, false);
    Mat xi(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) xi(i, j) = rng.uniform(-1.0, 1.0);
    Mat plus = Mat::identity(3), minus = Mat::identity(3);
    for (size_t i = 0; i < xi.a.size(); ++i) {
      plus.a[i] += h * xi.a[i];
      minus.a[i] -= h * xi.a[i];
    }
    const Christoffel fd_plus = act(LinearMap(plus), g);
    const Christoffel fd_minus = act(LinearMap(minus), g);
    const Christoffel lin = infinitesimal_action(xi, g);
    for (size_t i = 0; i < lin.coeffs.size(); ++i) {
      const double central = (fd_plus.coeffs[i] - fd_minus.coeffs[i]) / (2.0 * h);
      CHECK(central == Catch::Approx(lin.coeffs[i]).margin(1e-5));
    }
  }
}

TEST_CASE("stabilizer dimension of reference structures") {
  CHECK(stabilizer_lie_algebra(Christoffel(3)).lie_dimension == 9);

  const StabilizerReport f1 =
      stabilizer_lie_algebra(catalog::build(catalog::FamilyId::family1, {1, 0.5, 0.5, 1}));
  CHECK(f1.lie_dimension == 1);
  // generator proportional to diag(1, -1, 0)
  const Mat& gen = f1.lie_basis[0];
  const double scale = gen(0, 0);
  CHECK(std::abs(scale) > 0.1);
  CHECK(gen(1, 1) == Catch::Approx(-scale).margin(1e-8));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j || i == 2) CHECK(gen(i, j) == Catch::Approx(0.0).margin(1e-8));

  const StabilizerReport f2 =
      stabilizer_lie_algebra(catalog::build(catalog::FamilyId::family2, {1, 1, 1, 3}));
  CHECK(f2.lie_dimension == 1);
  const Mat& rot = f2.lie_basis[0];
  CHECK(rot(0, 1) == Catch::Approx(-rot(1, 0)).margin(1e-8));
  CHECK(std::abs(rot(0, 1)) > 0.1);
  CHECK(rot(2, 2) == Catch::Approx(0.0).margin(1e-8));

  CHECK(stabilizer_lie_algebra(catalog::build(catalog::FamilyId::model3d)).lie_dimension == 0);
  CHECK_THROWS_AS(stabilizer_lie_algebra(Christoffel(3), 2.0), BadParams);
}

TEST_CASE("stabilizer dimension is invariant under conjugation") {
  SplitMix64 rng(42);
  const Christoffel f1 = catalog::build(catalog::FamilyId::family1, {1, 1, 1, 3});
  for (int t = 0; t < 10; ++t) {
    const LinearMap a = random_linear_map(3, rng);
    CHECK(stabilizer_lie_algebra(act(a, f1)).lie_dimension == 1);
  }
}

TEST_CASE("every reported basis element annihilates the tensor") {
  SplitMix64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const Christoffel g =
        catalog::build(catalog::FamilyId::family2,
                       {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                        rng.uniform(0.5, 2.0), rng.uniform(1.5, 3.0)});
    const StabilizerReport rep = stabilizer_lie_algebra(g);
    for (const Mat& xi : rep.lie_basis)
      CHECK(infinitesimal_action(xi, g).max_abs() < 1e-7 * (1.0 + g.max_abs()));
  }
}

TEST_CASE("stabilizer dimension is lower semicontinuous along family paths") {
  // 20-point parameter path inside the hyperbolic-invariant family
  for (int s = 0; s <= 19; ++s) {
    const double u = s / 19.0;
    const Christoffel g = catalog::build(catalog::FamilyId::family1,
                                         {1.0 + u, 0.5, 0.5 + u, 2.0 - 0.5 * u});
    CHECK(stabilizer_lie_algebra(g).lie_dimension >= 1);
  }
}

TEST_CASE("fixed point predicate") {
  const Christoffel f1 = catalog::build(catalog::FamilyId::family1, {1, 1, 1, 3});
  CHECK(is_fixed(LinearMap::identity(3), f1));
  CHECK(is_fixed(hyperbolic(2.0), f1));
  CHECK(is_fixed(hyperbolic(-2.0), f1));  // det stays +1
  CHECK_FALSE(is_fixed(sign_flip(2), f1));
  const Christoffel f3 = catalog::build(catalog::FamilyId::family3, {1, 1, 1, 3});
  CHECK(is_fixed(rotation_3d(2.0 * kPi / 3.0), f3));
  CHECK_FALSE(is_fixed(rotation_3d(kPi / 5.0), f3));
  Mat z(3, 3);
  CHECK_THROWS_AS(is_fixed(LinearMap(z), f1), SingularMap);
}

TEST_CASE("element order computation") {
  CHECK(order_of(LinearMap::identity(3)) == std::optional<int>(1));
  CHECK(order_of(rotation_3d(2.0 * kPi / 3.0)) == std::optional<int>(3));
  CHECK(order_of(hyperbolic(2.0)) == std::nullopt);
  const LinearMap t3 = catalog::chained_symmetry(3);
  CHECK(order_of(t3) == std::optional<int>(7));
  // squaring permutes the odd-order cyclic group, so the order is unchanged
  CHECK(order_of(LinearMap(matmul(t3.entries, t3.entries))) == std::optional<int>(7));
  CHECK_THROWS_AS(order_of(LinearMap::identity(2), 0), BadParams);
}

TEST_CASE("generator constructors") {
  const LinearMap r0 = rotation_3d(0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(r0.entries(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));

  const LinearMap ab = compose(hyperbolic(2.0), hyperbolic(3.0));
  const LinearMap prod = hyperbolic(6.0);
  for (int i = 0; i < 3; ++i)
    CHECK(ab.entries(i, i) == Catch::Approx(prod.entries(i, i)));

  const LinearMap s3 = sign_flip(3);
  CHECK(s3.entries(0, 0) == -1.0);
  CHECK(s3.entries(1, 1) == -1.0);
  CHECK(s3.entries(2, 2) == 1.0);
  CHECK(determinant(s3.entries) == Catch::Approx(1.0));
  CHECK_THROWS_AS(hyperbolic(0.0), ZeroParameter);
  CHECK_THROWS_AS(sign_flip(4), BadParams);
}

TEST_CASE("exceptional groups close and act as expected") {
  const auto s3 = exceptional_group_elements(ExceptionalGroup::s3);
  REQUIRE(s3.size() == 6);
  const auto a4 = exceptional_group_elements(ExceptionalGroup::a4);
  REQUIRE(a4.size() == 12);
  const Christoffel gs3 = catalog::build(catalog::FamilyId::family3_s3);
  const Christoffel ga4 = catalog::build(catalog::FamilyId::family3_a4);
  for (const LinearMap& t : s3) CHECK(is_fixed(t, gs3));
  for (const LinearMap& t : a4) CHECK(is_fixed(t, ga4));
}

TEST_CASE("ricci normalization produces the canonical diagonal") {
  const Christoffel md = catalog::build(catalog::FamilyId::model3d);
  const LinearMap s = ricci_normalizer(md);
  const Mat normalized = symmetric_ricci(act(s, md)).entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(normalized(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-9));
  CHECK(determinant(s.entries) > 0.0);

  const Christoffel f4a = catalog::build(catalog::FamilyId::family4a);
  const Mat n4 = symmetric_ricci(act(ricci_normalizer(f4a), f4a)).entries;
  CHECK(n4(0, 0) == Catch::Approx(-1.0).margin(1e-9));
  CHECK(n4(1, 1) == Catch::Approx(1.0).margin(1e-9));
  CHECK(n4(2, 2) == Catch::Approx(1.0).margin(1e-9));

  SplitMix64 rng(44);
  for (int t = 0; t < 100; ++t) {
    const Christoffel g = random_christoffel(3, rng);
    const Signature sig = signature(symmetric_ricci(g));
    if (sig.degenerate) continue;
    const LinearMap norm = ricci_normalizer(g);
    CHECK(determinant(norm.entries) > 0.0);
    const Mat canon = symmetric_ricci(act(norm, g)).entries;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double want = (i != j) ? 0.0 : (i < sig.p ? -1.0 : 1.0);
        CHECK(canon(i, j) == Catch::Approx(want).margin(1e-9));
      }
  }
  CHECK_THROWS_AS(ricci_normalizer(Christoffel(3)), DegenerateRicci);
}

TEST_CASE("support pattern and relation lattice") {
  const Christoffel f4a = catalog::build(catalog::FamilyId::family4a);
  const SupportPattern p = support_pattern(f4a, 1e-10);
  CHECK(p.at(0, 1, 2));
  CHECK(p.at(1, 0, 2));
  CHECK_FALSE(p.at(0, 0, 0));
  const RelationLattice lat = relation_lattice(p);
  CHECK(lat.relations.size() == 6);
  for (const auto& row : lat.relations) {
    long long sum = 0;
    for (long long v : row) sum += v;
    CHECK(sum == 1);  // e_i + e_j - e_k
  }
  CHECK_THROWS_AS(support_pattern(f4a, 0.0), BadParams);
}

TEST_CASE("smith normal form invariant factors") {
  std::vector<std::vector<long long>> rows = {{2, -1}, {-1, 2}};
  const auto f = smith_invariant_factors(rows, 2);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 1);
  CHECK(f[1] == 3);

  // divisibility chain on a 3-column example
  std::vector<std::vector<long long>> rows2 = {{2, 0, 0}, {0, 6, 0}, {0, 0, 4}};
  const auto f2 = smith_invariant_factors(rows2, 3);
  REQUIRE(f2.size() == 3);
  CHECK(f2[0] == 2);
  CHECK(f2[1] == 2);
  CHECK(f2[2] == 12);

  SupportPattern empty;
  empty.m = 4;
  empty.theta.assign(64, 0);
  CHECK(torsion_order_bound(empty) == 1);
  for (int ell : {2, 3, 4})
    CHECK(torsion_order_bound(catalog::chained_support(ell)) == (1ll << ell) - 1);
}

TEST_CASE("scan finds the rotation group of the definite planar structure") {
  const Christoffel g2 = catalog::build(catalog::FamilyId::gamma2);
  const auto found = finite_symmetry_scan(g2, 60, 4242);
  REQUIRE(found.size() == 3);
  std::vector<int> orders;
  for (const LinearMap& t : found) orders.push_back(order_of(t).value_or(-1));
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>({1, 3, 3}));
  for (const LinearMap& t : found) CHECK(is_fixed(t, g2));
  CHECK_THROWS_AS(finite_symmetry_scan(Christoffel(2), 10, 1), DegenerateRicci);
}
