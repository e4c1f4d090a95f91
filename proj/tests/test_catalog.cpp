#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "ricci/catalog.hpp"

using namespace ricci;

namespace {

constexpr double kPi = std::numbers::pi;

double gb_over_32pi2(const GeometryState& state) {
  std::vector<PointScalars> pts;
  density_scalars(state, pts);
  double total = 0.0;
  for (const PointScalars& p : pts)
    total += (p.rm2 - 4.0 * p.rc2 + p.scalR * p.scalR) * p.weight;
  return total / (32.0 * kPi * kPi);
}

// Milnor's closed form for the principal Ricci curvatures of a 3D unimodular
// group with orthonormal bracket coefficients [f2,f3] = alpha f1 (cyclic):
//   r1 = 2 mu2 mu3, mu1 = (-alpha + beta + gamma)/2 (cyclic).
// Bracket coefficients come out of the stored structure constants and the
// squared frame scales, which makes this an independent route to the Ricci
// diagonal of the Lie-group families.
std::array<double, 4> milnor_ricci(const CatalogEntry& entry,
                                   const std::vector<double>& p) {
  auto coef = [&](int k, int i, int j) {
    return entry.structure[k][i][j] * std::sqrt(p[k] / (p[i] * p[j]));
  };
  const double alpha = coef(0, 1, 2);
  const double beta = coef(1, 2, 0);
  const double gamma = coef(2, 0, 1);
  const double mu1 = 0.5 * (-alpha + beta + gamma);
  const double mu2 = 0.5 * (alpha - beta + gamma);
  const double mu3 = 0.5 * (alpha + beta - gamma);
  return {2.0 * mu2 * mu3, 2.0 * mu1 * mu3, 2.0 * mu1 * mu2, 0.0};
}

}  // namespace

TEST_CASE("catalog inventory and structure validation") {
  CHECK_NOTHROW(validate_catalog());
  CHECK(catalog().size() == 6);
  CHECK(find_family("S4").chi == 2);
  CHECK(find_family("S2xS2").chi == 4);
  CHECK(find_family("T4").chi == 0);
  CHECK(find_family("BergerS3xS1").chi == 0);
  CHECK(find_family("Nil3xS1").chi == 0);
  CHECK(find_family("WarpedS1xS3").chi == 0);
  CHECK_THROWS_AS(find_family("Sol3xS1"), UnknownFamily);
}

TEST_CASE("round sphere frozen values") {
  const CatalogEntry& e = find_family("S4");
  GeometryState s = make_state(e, {{"r2", 4.0}});  // K = 1/4

  CHECK(volume(s) == doctest::Approx(8.0 * kPi * kPi / 3.0 * 16.0)
                         .epsilon(1e-13));
  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  REQUIRE(!pts.empty());
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(p.rc2 == doctest::Approx(2.25).epsilon(1e-13));
    CHECK(p.rm2 == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(p.grad2 == doctest::Approx(0.0));
  }
  CHECK(gb_over_32pi2(s) == doctest::Approx(2.0).epsilon(1e-12));

  std::array<double, 4> rd = frame_ricci_diagonal(e, s.params);
  for (double v : rd) CHECK(v == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("product of two spheres frozen values") {
  const CatalogEntry& e = find_family("S2xS2");
  GeometryState s = make_state(e, {{"a2", 1.0}, {"b2", 4.0}});

  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(p.rc2 == doctest::Approx(2.125).epsilon(1e-13));
    CHECK(p.rm2 == doctest::Approx(4.25).epsilon(1e-13));
  }
  CHECK(volume(s) == doctest::Approx(16.0 * kPi * kPi * 4.0).epsilon(1e-13));
  CHECK(gb_over_32pi2(s) == doctest::Approx(4.0).epsilon(1e-12));

  std::array<double, 4> rd = frame_ricci_diagonal(e, s.params);
  CHECK(rd[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rd[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rd[2] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(rd[3] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("flat torus is exactly flat") {
  const CatalogEntry& e = find_family("T4");
  GeometryState s =
      make_state(e, {{"a2", 2.0}, {"b2", 1.0}, {"c2", 0.5}, {"d2", 3.0}});
  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == 0.0);
    CHECK(p.rc2 == 0.0);
    CHECK(p.rm2 == 0.0);
    CHECK(p.grad2 == 0.0);
  }
  CHECK(volume(s) > 0.0);
  CHECK(gb_over_32pi2(s) == 0.0);
}

TEST_CASE("nilmanifold frozen values") {
  const CatalogEntry& e = find_family("Nil3xS1");
  GeometryState s =
      make_state(e, {{"a2", 1.0}, {"b2", 1.0}, {"c2", 1.0}, {"L2", 1.0}});

  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(p.rc2 == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(p.rm2 == doctest::Approx(2.75).epsilon(1e-13));
    // chi = 0 cancellation is pointwise here
    CHECK(p.rm2 - 4.0 * p.rc2 + p.scalR * p.scalR ==
          doctest::Approx(0.0).epsilon(1e-13));
  }

  std::array<double, 4> rd = frame_ricci_diagonal(e, s.params);
  std::array<double, 4> milnor = milnor_ricci(e, s.params);
  for (int i = 0; i < 4; ++i)
    CHECK(rd[i] == doctest::Approx(milnor[i]).epsilon(1e-12));
  CHECK(rd[0] + rd[1] + rd[2] + rd[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("Berger spheres match the Milnor closed form") {
  const CatalogEntry& e = find_family("BergerS3xS1");
  for (auto [l2, m2, L2] : {std::array<double, 3>{1.0, 1.0, 1.0},
                            std::array<double, 3>{2.0, 1.0, 0.5},
                            std::array<double, 3>{0.5, 3.0, 2.0}}) {
    GeometryState s =
        make_state(e, {{"lambda2", l2}, {"mu2", m2}, {"L2", L2}});
    std::array<double, 4> rd = frame_ricci_diagonal(e, s.params);
    std::array<double, 4> milnor = milnor_ricci(e, s.params);
    for (int i = 0; i < 4; ++i)
      CHECK(rd[i] == doctest::Approx(milnor[i]).epsilon(1e-12));

    std::vector<PointScalars> pts;
    density_scalars(s, pts);
    const double R = rd[0] + rd[1] + rd[2] + rd[3];
    const double rc2 = rd[0] * rd[0] + rd[1] * rd[1] + rd[2] * rd[2];
    for (const PointScalars& p : pts) {
      CHECK(p.scalR == doctest::Approx(R).epsilon(1e-12));
      CHECK(p.rc2 == doctest::Approx(rc2).epsilon(1e-12));
    }
    CHECK(gb_over_32pi2(s) == doctest::Approx(0.0).epsilon(1e-10));
  }

  // round case: lambda2 = mu2 = r2 gives the S^3(r) x S^1 values
  GeometryState round =
      make_state(e, {{"lambda2", 4.0}, {"mu2", 4.0}, {"L2", 1.0}});
  std::vector<PointScalars> pts;
  density_scalars(round, pts);
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == doctest::Approx(6.0 / 4.0).epsilon(1e-12));
    CHECK(p.rc2 == doctest::Approx(12.0 / 16.0).epsilon(1e-12));
    CHECK(p.rm2 == doctest::Approx(12.0 / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("warped family: product limit and quadrature") {
  const CatalogEntry& e = find_family("WarpedS1xS3");
  FourierSeries phi, psi;
  phi.constant = 2.0;
  psi.constant = 2.0;
  GeometryState s = make_warped_state(e, phi, psi, 128);

  // constant fields = S^1(2) x S^3(2)
  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  for (const PointScalars& p : pts) {
    CHECK(p.scalR == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(p.rc2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p.rm2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p.grad2 == doctest::Approx(0.0).epsilon(1e-12));
  }
  // vol = (2 pi phi) (2 pi^2 psi^3)
  CHECK(volume(s) == doctest::Approx(2.0 * kPi * 2.0 * 2.0 * kPi * kPi * 8.0)
                         .epsilon(1e-12));
  CHECK(gb_over_32pi2(s) == doctest::Approx(0.0).epsilon(1e-10));

  // wavy fields: Euler characteristic integral still vanishes, and the
  // quadrature agrees across a grid doubling
  FourierSeries wavyPsi;
  wavyPsi.constant = 3.0;
  wavyPsi.sinCoef = {0.5};
  FourierSeries wavyPhi;
  wavyPhi.constant = 3.0;
  wavyPhi.cosCoef = {0.0, 0.3};
  GeometryState w128 = make_warped_state(e, wavyPhi, wavyPsi, 128);
  GeometryState w256 = make_warped_state(e, wavyPhi, wavyPsi, 256);
  CHECK(std::abs(gb_over_32pi2(w128)) < 1e-6);
  CHECK(std::abs(gb_over_32pi2(w256)) < 1e-6);
  CHECK(volume(w128) == doctest::Approx(volume(w256)).epsilon(1e-10));

  // curvature actually varies along theta
  std::vector<PointScalars> wavyPts;
  density_scalars(w128, wavyPts);
  double lo = wavyPts.front().scalR, hi = lo;
  for (const PointScalars& p : wavyPts) {
    lo = std::min(lo, p.scalR);
    hi = std::max(hi, p.scalR);
  }
  CHECK(hi - lo > 1e-3);
}

TEST_CASE("state construction guards") {
  const CatalogEntry& s4 = find_family("S4");
  CHECK_THROWS_AS(make_state(s4, {{"radius", 1.0}}), DomainError);
  CHECK_THROWS_AS(make_state(s4, {{"r2", -1.0}}), DomainError);
  CHECK_THROWS_AS(make_state(s4, {{"r2", 0.0}}), DomainError);

  // defaults fill in missing parameters
  GeometryState def = make_state(find_family("S2xS2"), {{"a2", 2.0}});
  CHECK(def.params[0] == 2.0);
  CHECK(def.params[1] == find_family("S2xS2").defaultParams.at("b2"));

  const CatalogEntry& w = find_family("WarpedS1xS3");
  FourierSeries tiny;
  tiny.constant = 1e-9;
  FourierSeries ok;
  ok.constant = 2.0;
  CHECK_THROWS_AS(make_warped_state(w, ok, tiny, 128), DegenerateField);
  CHECK_THROWS_AS(make_warped_state(w, ok, ok, 12), DomainError);
  CHECK_THROWS_AS(make_warped_state(w, ok, ok, 4), DomainError);

  GeometryState good = make_warped_state(w, ok, ok, 64);
  CHECK_NOTHROW(validate_state(good));
  good.params[3] = -1.0;
  CHECK_THROWS_AS(validate_state(good), DegenerateField);

  GeometryState homog = make_state(s4, {});
  CHECK_NOTHROW(validate_state(homog));
  homog.params[0] = 0.0;
  CHECK_THROWS_AS(validate_state(homog), DomainError);
}

TEST_CASE("connection coefficients: compatibility and torsion") {
  for (const char* name : {"BergerS3xS1", "Nil3xS1", "T4"}) {
    const CatalogEntry& e = find_family(name);
    GeometryState s = make_state(e, {});
    ConnectionCoefficients G = koszul_connection(e, s.params);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          // orthonormal frame: nabla g = 0 reads Gamma antisymmetric in jk
          CHECK(gamma_at(G, i, j, k) ==
                doctest::Approx(-gamma_at(G, i, k, j)).epsilon(1e-13));
          // torsion-free: Gamma^k_ij - Gamma^k_ji = <[f_i,f_j], f_k>
          const double bracket =
              e.hasStructure
                  ? e.structure[k][i][j] *
                        std::sqrt(s.params[k] / (s.params[i] * s.params[j]))
                  : 0.0;
          CHECK(gamma_at(G, i, j, k) - gamma_at(G, j, i, k) ==
                doctest::Approx(bracket).epsilon(1e-12));
        }
  }
  // normal-frame families carry a vanishing connection at the base point
  const CatalogEntry& s4 = find_family("S4");
  ConnectionCoefficients G = koszul_connection(s4, make_state(s4, {}).params);
  for (double v : G) CHECK(v == 0.0);
}

TEST_CASE("quadrature plumbing") {
  GeometryState s = make_state(find_family("S2xS2"), {});
  std::vector<PointScalars> pts;
  density_scalars(s, pts);
  std::vector<double> ones(pts.size(), 1.0);
  CHECK(integrate(s, ones) == doctest::Approx(volume(s)).epsilon(1e-13));
  std::vector<double> bad(pts.size() + 1, 1.0);
  CHECK_THROWS_AS(integrate(s, bad), ArityMismatch);

  // point_data must agree with the cheap scalar route
  std::vector<PointData> full = point_data(s);
  REQUIRE(full.size() == pts.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(full[i].weight == doctest::Approx(pts[i].weight).epsilon(1e-13));
    CHECK(full[i].scalR == doctest::Approx(pts[i].scalR).epsilon(1e-12));
  }
}
