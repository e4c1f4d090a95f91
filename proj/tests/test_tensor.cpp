#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ricci/tensor.hpp"

using namespace ricci;

namespace {

// Brute-force contractions straight off the component array, kept separate
// from the library loops on purpose.
double oracle_scalar(const CurvatureTensor& rm) {
  double r = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r += rm(i, j, i, j);
  return r;
}

double oracle_rm2(const CurvatureTensor& rm) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) s += rm(i, j, k, l) * rm(i, j, k, l);
  return s;
}

double oracle_bilinear(const CurvatureTensor& rm, const Sym2Tensor& rc) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l)
          s += rm(i, k, j, l) * rc(i, j) * rc(k, l);
  return s;
}

}  // namespace

TEST_CASE("symmetric tensor storage and inverse") {
  Sym2Tensor g = Sym2Tensor::diagonal(2.0, 4.0, 5.0, 10.0);
  Sym2Tensor gi = inverse_metric(g);
  CHECK(gi(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gi(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(gi(3, 3) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(gi(0, 1) == doctest::Approx(0.0));

  Sym2Tensor a;
  a.set(1, 2, 7.0);
  CHECK(a(2, 1) == 7.0);

  // off-diagonal metric: [[2,1],[1,2]] block
  Sym2Tensor m = Sym2Tensor::diagonal(2.0, 2.0, 1.0, 1.0);
  m.set(0, 1, 1.0);
  Sym2Tensor mi = inverse_metric(m);
  CHECK(mi(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(mi(0, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

  Sym2Tensor bad = Sym2Tensor::diagonal(1.0, -1.0, 1.0, 1.0);
  CHECK_THROWS_AS(inverse_metric(bad), SingularMetric);
  CHECK_THROWS_AS(inverse_metric(Sym2Tensor{}), SingularMetric);
}

TEST_CASE("constant curvature closed forms") {
  const double K = 0.25;  // radius-2 sphere
  CurvatureTensor rm = constant_curvature(K);
  validate_curvature(rm);

  Sym2Tensor g = Sym2Tensor::identity();
  Sym2Tensor rc = ricci_of(rm, g);
  for (int i = 0; i < kDim; ++i)
    CHECK(rc(i, i) == doctest::Approx(3.0 * K).epsilon(1e-14));
  CHECK(scalar_of(rc, g) == doctest::Approx(12.0 * K).epsilon(1e-14));

  Norms n = norms(rm, rc, g);
  CHECK(n.rm2 == doctest::Approx(24.0 * K * K).epsilon(1e-13));
  CHECK(n.rc2 == doctest::Approx(36.0 * K * K).epsilon(1e-13));

  // Rm(A,A) = K ((tr A)^2 - |A|^2) for a space form, A = Rc = 3K g.
  CHECK(rm_bilinear(rm, rc, g) ==
        doctest::Approx(108.0 * K * K * K).epsilon(1e-13));
  CHECK(oracle_bilinear(rm, rc) ==
        doctest::Approx(108.0 * K * K * K).epsilon(1e-13));

  const double I = gauss_bonnet_density(rm, rc, 12.0 * K, g);
  CHECK(I == doctest::Approx(24.0 * K * K).epsilon(1e-13));

  // f = |Rc|^2/(R + 2) at unit radius: 36/14
  CurvatureTensor unit = constant_curvature(1.0);
  Sym2Tensor unitRc = ricci_of(unit, g);
  Norms un = norms(unit, unitRc, g);
  CHECK(f_density(un.rc2, scalar_of(unitRc, g), 2.0) ==
        doctest::Approx(18.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("sparse curvature assembly and symmetry policing") {
  std::array<RmComponent, 2> gen{{{0, 1, 0, 1, 0.5}, {2, 3, 2, 3, -0.25}}};
  CurvatureTensor rm = build_curvature(gen);
  CHECK(rm(0, 1, 0, 1) == 0.5);
  CHECK(rm(1, 0, 0, 1) == -0.5);
  CHECK(rm(0, 1, 1, 0) == -0.5);
  CHECK(rm(1, 0, 1, 0) == 0.5);
  CHECK(rm(2, 3, 2, 3) == -0.25);
  CHECK(rm(3, 2, 2, 3) == 0.25);
  CHECK(rm(0, 2, 0, 2) == 0.0);

  // pair-swap orbit: R_{0101} also fixes R_{0101} via klij; conflicting
  // assignments on one orbit must be rejected
  std::array<RmComponent, 2> conflict{{{0, 1, 0, 1, 1.0}, {0, 1, 1, 0, 1.0}}};
  CHECK_THROWS_AS(build_curvature(conflict), SymmetryViolation);

  // antisymmetry forces R_{0001} = 0
  std::array<RmComponent, 1> forced{{{0, 0, 0, 1, 1.0}}};
  CHECK_THROWS_AS(build_curvature(forced), SymmetryViolation);

  // first Bianchi: R_{0123} + R_{0231} + R_{0312} = 0
  std::array<RmComponent, 3> bianchiOk{
      {{0, 1, 2, 3, 1.0}, {0, 2, 3, 1, -0.75}, {0, 3, 1, 2, -0.25}}};
  CHECK_NOTHROW(build_curvature(bianchiOk));
  std::array<RmComponent, 3> bianchiBad{
      {{0, 1, 2, 3, 1.0}, {0, 2, 3, 1, 1.0}, {0, 3, 1, 2, 1.0}}};
  CHECK_THROWS_AS(build_curvature(bianchiBad), SymmetryViolation);
}

TEST_CASE("random curvature tensors are valid and reproducible") {
  CurvatureTensor a = random_curvature(42);
  CurvatureTensor b = random_curvature(42);
  CurvatureTensor c = random_curvature(43);
  bool same = true, differs = false;
  for (int i = 0; i < 256; ++i) {
    same = same && a.components()[i] == b.components()[i];
    differs = differs || a.components()[i] != c.components()[i];
  }
  CHECK(same);
  CHECK(differs);
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK_NOTHROW(validate_curvature(random_curvature(seed)));
}

TEST_CASE("pointwise algebra properties on random tensors") {
  Sym2Tensor g = Sym2Tensor::identity();
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    CurvatureTensor rm = random_curvature(seed);
    Sym2Tensor rc = ricci_of(rm, g);
    const double R = scalar_of(rc, g);
    Norms n = norms(rm, rc, g);

    CHECK(n.rm2 == doctest::Approx(oracle_rm2(rm)).epsilon(1e-12));
    CHECK(R == doctest::Approx(oracle_scalar(rm)).epsilon(1e-12));

    // R = <Rc, g>, |g| = 2 in dimension 4
    CHECK(R * R <= 4.0 * n.rc2 * (1.0 + 1e-12) + 1e-300);

    const double bil = rm_bilinear(rm, rc, g);
    CHECK(std::abs(bil) <=
          std::sqrt(n.rm2) * n.rc2 * (1.0 + 1e-12) + 1e-300);

    // Young step needs R + 2 > 0; flip the sign of the tensor when R < 0
    // (negation preserves every curvature symmetry).
    CurvatureTensor probe = rm;
    Sym2Tensor probeRc = rc;
    double probeR = R;
    if (R < 0.0) {
      std::array<double, 256> neg{};
      for (int i = 0; i < 256; ++i) neg[i] = -rm.components()[i];
      probe = build_curvature(neg);
      probeRc = ricci_of(probe, g);
      probeR = -R;
    }
    MarginReport y = young_pointwise_check(probe, probeRc, probeR, g);
    const double scale = std::max({1.0, std::abs(y.lhs), std::abs(y.rhs)});
    CHECK(y.margin >= -1e-12 * scale);
    CHECK(y.margin == doctest::Approx(y.rhs - y.lhs).epsilon(1e-14));
  }
}

TEST_CASE("gradient norms and the Z tensor") {
  Sym2Tensor g = Sym2Tensor::identity();
  Sym2Tensor rc = Sym2Tensor::identity();  // R = 4, |Rc|^2 = 4
  const double R = scalar_of(rc, g);
  CHECK(R == 4.0);

  CurvatureDerivatives d;
  d.set_rc(0, 1, 1, 2.0);
  d.gradR[0] = 3.0;

  // Z_{0,1,1} = 2 (R+2) - 3 = 9, Z_{0,ii} = -3 for i != 1, rest zero
  CHECK(z_norm_sq(d, rc, R, 2.0, g) == doctest::Approx(108.0).epsilon(1e-14));
  CHECK_THROWS_AS(z_norm_sq(d, rc, -2.0, 2.0, g), DenominatorNonpositive);
  CHECK_THROWS_AS(f_density(1.0, -2.0, 2.0), DenominatorNonpositive);
  CHECK_THROWS_AS(f_density(1.0, -5.0, 2.0), DenominatorNonpositive);

  d.set_rc(2, 0, 3, 0.4);
  CHECK(d.rc(2, 0, 3) == 0.4);
  CHECK(d.rc(2, 3, 0) == 0.4);  // symmetric in the last index pair
}

TEST_CASE("pointwise density bundle is coherent") {
  Sym2Tensor g = Sym2Tensor::identity();
  CurvatureTensor rm = constant_curvature(0.5);
  Sym2Tensor rc = ricci_of(rm, g);
  const double R = scalar_of(rc, g);
  CurvatureDerivatives d;
  d.set_rc(1, 0, 2, 0.3);
  d.gradR[1] = -0.7;

  PointwiseDensities p = pointwise_densities(rm, rc, R, d, g, 2.0);
  Norms n = norms(rm, rc, g);
  CHECK(p.normRc2 == doctest::Approx(n.rc2).epsilon(1e-14));
  CHECK(p.normRm2 == doctest::Approx(n.rm2).epsilon(1e-14));
  CHECK(p.scalR == doctest::Approx(R).epsilon(1e-14));
  CHECK(p.fDensity == doctest::Approx(f_density(n.rc2, R, 2.0)).epsilon(1e-14));
  CHECK(p.gbDensity ==
        doctest::Approx(gauss_bonnet_density(rm, rc, R, g)).epsilon(1e-14));
  CHECK(p.rmBilinear == doctest::Approx(rm_bilinear(rm, rc, g)).epsilon(1e-14));
  CHECK(p.zNorm2 == doctest::Approx(z_norm_sq(d, rc, R, 2.0, g)).epsilon(1e-14));
}
