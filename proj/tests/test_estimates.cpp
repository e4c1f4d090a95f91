#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ricci/estimates.hpp"

using namespace ricci;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

Trajectory run(const char* family, std::map<std::string, double> params,
               double tEnd = 1.0, int reportCount = 200) {
  const CatalogEntry& e = find_family(family);
  FlowConfig cfg;
  cfg.tEnd = tEnd;
  cfg.reportCount = reportCount;
  return evolve(e, make_state(e, params), cfg);
}

const Trajectory& calm_s4() {
  static const Trajectory traj = run("S4", {{"r2", 100.0}});
  return traj;
}

const Trajectory& calm_berger() {
  static const Trajectory traj =
      run("BergerS3xS1", {{"lambda2", 120.0}, {"mu2", 100.0}, {"L2", 100.0}});
  return traj;
}

const Trajectory& flat_t4() {
  static const Trajectory traj = run("T4", {});
  return traj;
}

InequalityResult find_check(const std::vector<InequalityResult>& rs,
                            const std::string& id) {
  for (const auto& r : rs)
    if (r.checkId == id) return r;
  REQUIRE_MESSAGE(false, "missing check ", id);
  return {};
}

}  // namespace

TEST_CASE("margin rule") {
  CHECK(margin_passes(0.0, 1.0, 1.0, 1e-7));
  CHECK(margin_passes(-1e-8, 1.0, 1.0, 1e-7));
  CHECK(!margin_passes(-2e-7, 1.0, 1.0, 1e-7));
  // scale picks up the larger side
  CHECK(margin_passes(-5.0, 1e8, 1e8, 1e-7));
  CHECK(!margin_passes(-1e-6, 0.0, 0.0, 1e-7));
  CHECK(margin_passes(-1e-12, 0.0, 0.0, 0.0) == false);
  CHECK(margin_passes(0.0, 0.0, 0.0, 0.0));
  CHECK(to_string(CheckStatus::Pass) == "PASS");
  CHECK(to_string(CheckStatus::Fail) == "FAIL");
  CHECK(to_string(CheckStatus::PreconditionUnmet) == "PRECONDITION_UNMET");
}

TEST_CASE("closed-form constants at time zero") {
  const BoundConstants k = bound_constants(calm_s4());
  CHECK(k.chi == 2.0);
  CHECK(k.vol0 == doctest::Approx(8.0 * kPi2 / 3.0 * 1e4).epsilon(1e-10));

  // S4 radius-squared 100: |Rc|^2 = 36e-4, R = 0.12, f = |Rc|^2/(R+2)
  const double vol = 8.0 * kPi2 / 3.0 * 1e4;
  CHECK(k.intRc2_0 == doctest::Approx(36e-4 * vol).epsilon(1e-10));
  CHECK(k.intF0 == doctest::Approx(36e-4 / 2.12 * vol).epsilon(1e-10));
  CHECK(k.intRc2OverR0 == doctest::Approx(36e-4 / 0.12 * vol).epsilon(1e-10));

  // boundary values pin the exponential assembly
  CHECK(k.c0(0.0) == doctest::Approx(k.intF0).epsilon(1e-14));
  CHECK(k.a0(0.0) == doctest::Approx(k.intRc2OverR0).epsilon(1e-14));
  CHECK(k.b(0.0) == doctest::Approx(50.0 * k.intRc2_0).epsilon(1e-14));
  CHECK(k.gradBound(0.0) == doctest::Approx(51.0 * k.intRc2_0).epsilon(1e-14));

  // frozen spot values of the growth laws
  CHECK(k.c0(0.1) ==
        doctest::Approx(4.0 * kPi2 * 2.0 * std::expm1(6.4) +
                        std::exp(6.4) * k.intF0)
            .epsilon(1e-13));
  CHECK(k.b(0.1) ==
        doctest::Approx(50.0 * std::exp(5.0) * k.intRc2_0 +
                        128.0 * kPi2 * 2.0 * std::expm1(5.0))
            .epsilon(1e-13));
  CHECK(k.c0(0.5) > k.c0(0.1));
  CHECK(k.b(0.5) > k.b(0.1));

  // chi = 0 families: no topology term, b(0) = 0 when Rc = 0
  const BoundConstants flat = bound_constants(flat_t4());
  CHECK(flat.chi == 0.0);
  CHECK(flat.intRc2_0 == 0.0);
  CHECK(flat.b(2.0) == 0.0);
  CHECK(flat.c0(2.0) == 0.0);
  CHECK(flat.gradBound(5.0) == 0.0);
}

TEST_CASE("sample lookup") {
  const Trajectory& traj = calm_s4();
  CHECK(nearest_sample(traj, -5.0) == 0);
  CHECK(nearest_sample(traj, 0.0) == 0);
  CHECK(nearest_sample(traj, 100.0) == traj.samples.size() - 1);
  const std::size_t mid = nearest_sample(traj, 0.5);
  CHECK(std::abs(traj.samples[mid].t - 0.5) <= 0.5 / 199.0 + 1e-12);
}

TEST_CASE("main bounds pass and start with zero margin") {
  const Trajectory& traj = calm_s4();
  auto at0 = check_main(traj, 0.0);
  REQUIRE(at0.size() == 4);
  const InequalityResult f0 = find_check(at0, "main.f_bound");
  // at S = 0 the f bound collapses to int f(0) <= c0(0), an equality
  CHECK(std::abs(f0.margin) <=
        1e-12 * std::max({1.0, std::abs(f0.lhs), std::abs(f0.rhs)}));
  CHECK(f0.status == CheckStatus::Pass);

  for (double S : {0.25, 0.5, 1.0})
    for (const auto& r : check_main(traj, S)) {
      CHECK(r.status == CheckStatus::Pass);
      CHECK(r.margin == doctest::Approx(r.rhs - r.lhs));
    }

  // scalar curvature below -1 initially: precondition violated
  Trajectory sour = run("Nil3xS1", {{"c2", 16.0}}, 0.5);
  for (const auto& r : check_main(sour, 0.25))
    CHECK(r.status == CheckStatus::PreconditionUnmet);
}

TEST_CASE("positive-scalar bounds") {
  for (const auto& r : check_positive_scalar(calm_s4(), 1.0))
    CHECK(r.status == CheckStatus::Pass);
  for (const auto& r : check_positive_scalar(calm_berger(), 1.0))
    CHECK(r.status == CheckStatus::Pass);
  auto flat = check_positive_scalar(flat_t4(), 1.0);
  REQUIRE(flat.size() == 3);
  for (const auto& r : flat) CHECK(r.status == CheckStatus::PreconditionUnmet);
}

TEST_CASE("evolution identity residuals are at discretization level") {
  Trajectory traj = run("S4", {{"r2", 36.0}}, 0.5, 501);
  auto series = identity_residual_series(traj);
  REQUIRE(series.size() == traj.samples.size() - 2);
  double worst = 0.0;
  for (const auto& s : series) {
    worst = std::max(worst, std::abs(s.residual));
    CHECK(s.residual == doctest::Approx(s.numericDeriv - s.rhs));
  }
  CHECK(worst < 1e-6);

  auto agg = check_evolution_identity(traj);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].status == CheckStatus::Pass);
  CHECK(agg[0].lhs == doctest::Approx(worst));
  CHECK(agg[0].tolerance == 0.0);
}

TEST_CASE("differential inequality holds in both variants") {
  const Trajectory& traj = calm_s4();
  for (auto variant :
       {DifferentialVariant::General, DifferentialVariant::Basic}) {
    auto rs = check_differential(traj, variant);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].status == CheckStatus::Pass);
  }

  // the Basic variant needs sup|R| <= 1
  Trajectory hot = run("S4", {{"r2", 2.0}}, 0.2);
  auto basic = check_differential(hot, DifferentialVariant::Basic);
  CHECK(basic[0].status == CheckStatus::PreconditionUnmet);
  auto general = check_differential(hot, DifferentialVariant::General);
  CHECK(general[0].status == CheckStatus::Pass);

  // residual series shape: rhs uses the instantaneous integrals only
  auto series =
      differential_residual_series(traj, DifferentialVariant::General);
  REQUIRE(series.size() == traj.samples.size() - 2);
}

TEST_CASE("bounded-scalar suite") {
  const Trajectory& traj = calm_s4();
  CHECK(check_basic_assumptions(traj).status == CheckStatus::Pass);
  auto rs = check_bounded_scalar(traj);
  REQUIRE(rs.size() == 6);
  for (const auto& r : rs) CHECK(r.status == CheckStatus::Pass);

  // tail bounds shrink to zero as S -> T
  const InequalityResult tail = find_check(rs, "basic.rc_tail_p2");
  CHECK(tail.rhs >= 0.0);

  // sup|R| > 1 is an unmet hypothesis, not a violated estimate
  Trajectory hot = run("S4", {{"r2", 2.0}}, 0.2);
  const InequalityResult a = check_basic_assumptions(hot);
  CHECK(a.status == CheckStatus::PreconditionUnmet);
  CHECK(a.lhs > 1.0);
  for (const auto& r : check_bounded_scalar(hot))
    CHECK(r.status == CheckStatus::PreconditionUnmet);
}

TEST_CASE("scaled bounds on a window") {
  const Trajectory& traj = calm_berger();
  const double T = traj.samples.back().t;
  for (double c : {1.0, 2.0, 4.0}) {
    auto rs = check_scaled(traj, c, 0.25 * c * T, c * T);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) CHECK(r.status == CheckStatus::Pass);
  }
  // c < 1 invalidates only the window-quartic part
  auto sub = check_scaled(traj, 0.5, 0.1 * T, 0.5 * T);
  CHECK(find_check(sub, "scaled.rc2_bound").status == CheckStatus::Pass);
  CHECK(find_check(sub, "scaled.rc4_window").status ==
        CheckStatus::PreconditionUnmet);

  // scaling requires the basic assumptions on the base run
  Trajectory hot = run("S4", {{"r2", 2.0}}, 0.2);
  for (const auto& r : check_scaled(hot, 2.0, 0.1, 0.4))
    CHECK(r.status == CheckStatus::PreconditionUnmet);
}

TEST_CASE("gradient budget") {
  auto berger = check_gradient(calm_berger());
  CHECK(berger.status == CheckStatus::Pass);
  CHECK(berger.lhs > 0.0);  // anisotropy drives grad Rc
  CHECK(berger.rhs > berger.lhs);

  auto flat = check_gradient(flat_t4());
  CHECK(flat.status == CheckStatus::Pass);
  CHECK(flat.lhs == 0.0);
  CHECK(flat.rhs == 0.0);  // zero initial Ricci, chi = 0
}

TEST_CASE("sup-rescaled bounds") {
  Trajectory hot = run("S4", {{"r2", 2.0}}, 0.2);
  auto rs = check_rescaled_by_sup(hot);
  REQUIRE(rs.size() == 4);
  for (const auto& r : rs) CHECK(r.status == CheckStatus::Pass);

  // K < 1: guard trips
  for (const auto& r : check_rescaled_by_sup(calm_s4()))
    CHECK(r.status == CheckStatus::PreconditionUnmet);
}

TEST_CASE("Euler characteristic from curvature") {
  GeometryState s4 = make_state(find_family("S4"), {{"r2", 2.5}});
  InequalityResult r = check_gauss_bonnet(s4);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.rhs == 2.0);
  CHECK(r.tolerance == 1e-10);

  const CatalogEntry& w = find_family("WarpedS1xS3");
  FourierSeries phi, psi;
  phi.constant = 3.0;
  psi.constant = 3.0;
  psi.sinCoef = {0.3};
  InequalityResult rw = check_gauss_bonnet(make_warped_state(w, phi, psi, 128));
  CHECK(rw.status == CheckStatus::Pass);
  CHECK(rw.tolerance == 1e-6);
  CHECK(rw.margin == doctest::Approx(-std::abs(rw.lhs - rw.rhs)));
}

TEST_CASE("monitors") {
  CHECK(check_scalar_min_monotone(calm_s4()).status == CheckStatus::Pass);
  CHECK(check_scalar_min_monotone(flat_t4()).status == CheckStatus::Pass);
  CHECK(check_volume_identity(calm_s4()).status == CheckStatus::Pass);
  CHECK(check_volume_identity(flat_t4()).status == CheckStatus::Pass);
}

TEST_CASE("suite dispatch") {
  CHECK(suite_names().size() == 10);
  CHECK_THROWS_AS(run_suite("nosuch", calm_s4(), {}), UnknownSuite);

  auto main4 = run_suite("main", calm_s4(), {});
  CHECK(main4.size() == 4);
  auto basic = run_suite("basic", calm_s4(), {});
  CHECK(basic.size() == 7);  // assumptions + six bounds
  auto maxp = run_suite("maxprinciple", calm_s4(), {});
  CHECK(maxp.size() == 2);

  // the forced-failure hook: zero tolerance turns the small warped
  // discretization residual into a FAIL
  const CatalogEntry& w = find_family("WarpedS1xS3");
  FourierSeries phi, psi;
  phi.constant = 3.0;
  psi.constant = 3.0;
  psi.sinCoef = {0.3};
  FlowConfig cfg;
  cfg.tEnd = 0.25;
  Trajectory wt = evolve(w, make_warped_state(w, phi, psi, 64), cfg);
  SuiteOptions strict;
  strict.equalityTolOverride = 0.0;
  auto forced = run_suite("gaussbonnet", wt, strict);
  REQUIRE(forced.size() == 1);
  CHECK(forced[0].status == CheckStatus::Fail);
  CHECK(forced[0].tolerance == 0.0);

  auto normal = run_suite("gaussbonnet", wt, {});
  CHECK(normal[0].status == CheckStatus::Pass);
}
