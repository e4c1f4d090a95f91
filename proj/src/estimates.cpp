#include "ricci/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ricci {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// chi multiplies exponentially large factors; skip the product entirely for
// chi = 0 so that huge horizons cannot produce 0 * inf.
double chi_term(double chi, double factor) {
  return chi == 0.0 ? 0.0 : chi * factor;
}

InequalityResult finish(std::string id, double t, double lhs, double rhs,
                        double margin, double tol) {
  InequalityResult r;
  r.checkId = std::move(id);
  r.evalTime = t;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.tolerance = tol;
  r.status = margin_passes(margin, lhs, rhs, tol) ? CheckStatus::Pass
                                                  : CheckStatus::Fail;
  return r;
}

InequalityResult bound_result(std::string id, double t, double lhs, double rhs,
                              double tol = kDefaultMarginTol) {
  return finish(std::move(id), t, lhs, rhs, rhs - lhs, tol);
}

InequalityResult equality_result(std::string id, double t, double lhs,
                                 double rhs, double tol) {
  return finish(std::move(id), t, lhs, rhs, -std::abs(lhs - rhs), tol);
}

InequalityResult unmet(std::string id, double t) {
  InequalityResult r;
  r.checkId = std::move(id);
  r.evalTime = t;
  r.status = CheckStatus::PreconditionUnmet;
  r.tolerance = kDefaultMarginTol;
  return r;
}

void require_samples(const Trajectory& traj) {
  if (traj.samples.empty() || traj.entry == nullptr)
    throw DomainError("trajectory has no samples");
}

double report_dt(const Trajectory& traj) {
  if (traj.samples.size() < 2) return 0.0;
  return traj.samples[1].t - traj.samples[0].t;
}

bool basic_holds(const Trajectory& traj) {
  return basic_assumptions_check(traj).holds;
}

// Central-difference tolerance: truncation from an estimated third
// derivative plus the sample-noise amplification 1/dt.
double fd_tolerance(const Trajectory& traj, const std::vector<double>& f,
                    const std::vector<double>& rhs) {
  const double dt = report_dt(traj);
  const std::size_t n = f.size();
  double scale = 1.0;
  for (double v : f) scale = std::max(scale, std::abs(v));
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  double maxThird = 0.0;
  for (std::size_t j = 2; j + 2 < n; ++j) {
    const double d3 = (f[j + 2] - 2.0 * f[j + 1] + 2.0 * f[j - 1] - f[j - 2]) /
                      (2.0 * dt * dt * dt);
    maxThird = std::max(maxThird, std::abs(d3));
  }
  const double trunc = 4.0 * (dt * dt / 6.0) * maxThird;
  const double noise =
      8.0 * (traj.config.relTol * scale + traj.config.absTol) / dt;
  return trunc + noise;
}

std::vector<ResidualSample> residual_series(
    const Trajectory& traj, const std::vector<double>& integral,
    const std::vector<double>& rhs) {
  const double dt = report_dt(traj);
  std::vector<ResidualSample> out;
  if (integral.size() < 3 || dt <= 0.0) return out;
  out.reserve(integral.size() - 2);
  for (std::size_t j = 1; j + 1 < integral.size(); ++j) {
    ResidualSample s;
    s.t = traj.samples[j].t;
    s.numericDeriv = (integral[j + 1] - integral[j - 1]) / (2.0 * dt);
    s.rhs = rhs[j];
    s.residual = s.numericDeriv - s.rhs;
    out.push_back(s);
  }
  return out;
}

std::vector<double> f_samples(const Trajectory& traj) {
  std::vector<double> f;
  f.reserve(traj.samples.size());
  for (const auto& s : traj.samples) f.push_back(s.inst.f);
  return f;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    default:
      return "PRECONDITION_UNMET";
  }
}

bool margin_passes(double margin, double lhs, double rhs, double tolerance) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return margin >= -tolerance * scale;
}

double BoundConstants::c0(double S) const {
  return chi_term(4.0 * kPi2 * chi, std::expm1(64.0 * S)) +
         std::exp(64.0 * S) * intF0;
}

double BoundConstants::a0(double S) const {
  return chi_term(4.0 * kPi2 * chi, std::expm1(64.0 * S)) +
         std::exp(64.0 * S) * intRc2OverR0;
}

double BoundConstants::b(double t) const {
  return 50.0 * std::exp(50.0 * t) * intRc2_0 +
         chi_term(128.0 * kPi2 * chi, std::expm1(50.0 * t));
}

double BoundConstants::gradBound(double T) const {
  return intRc2_0 + b(T) + chi_term(512.0 * kPi2 * chi, T) +
         64.0 * (std::expm1(50.0 * T) * intRc2_0 +
                 chi_term(128.0 * kPi2 * chi, std::expm1(50.0 * T) / 50.0 - T));
}

BoundConstants bound_constants(const Trajectory& traj) {
  require_samples(traj);
  const TrajectorySample& s0 = traj.samples.front();
  BoundConstants k;
  k.chi = static_cast<double>(traj.entry->chi);
  k.intF0 = s0.inst.f;
  k.intRc2_0 = s0.inst.rc2;
  k.vol0 = s0.inst.vol;
  if (s0.inst.minR > 0.0) {
    std::vector<PointScalars> pts;
    density_scalars(s0.state, pts);
    double acc = 0.0;
    for (const PointScalars& p : pts) acc += p.rc2 / p.scalR * p.weight;
    k.intRc2OverR0 = acc;
  } else {
    k.intRc2OverR0 = std::numeric_limits<double>::quiet_NaN();
  }
  return k;
}

std::size_t nearest_sample(const Trajectory& traj, double t) {
  require_samples(traj);
  std::size_t best = 0;
  double bestDist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const double d = std::abs(traj.samples[i].t - t);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}

std::vector<InequalityResult> check_main(const Trajectory& traj, double S) {
  require_samples(traj);
  static const char* ids[4] = {"main.f_bound", "main.rc1_bound",
                               "main.rc2_spacetime", "main.rm2_spacetime"};
  const std::size_t i = nearest_sample(traj, S);
  const TrajectorySample& s = traj.samples[i];
  const double t = s.t;
  if (!(traj.samples.front().inst.minR > -1.0) || !traj.fAccumulatorValid) {
    std::vector<InequalityResult> out;
    for (const char* id : ids) out.push_back(unmet(id, t));
    return out;
  }
  const BoundConstants k = bound_constants(traj);
  const double c0 = k.c0(t);
  const double e64 = std::exp(64.0 * t);
  const double aR2 = s.acc.r2;
  std::vector<InequalityResult> out;
  out.push_back(bound_result(ids[0], t, s.inst.f + s.acc.f2,
                             c0 + 1024.0 * e64 * aR2));
  out.push_back(bound_result(ids[1], t, s.inst.rc1,
                             s.inst.vol + 2.0 * c0 + 2048.0 * e64 * aR2));
  out.push_back(bound_result(ids[2], t, s.acc.rcp[1],
                             s.acc.vol + 8.0 * c0 + 8192.0 * e64 * aR2));
  out.push_back(bound_result(
      ids[3], t, s.acc.rm2,
      4.0 * s.acc.vol + 32.0 * (c0 + chi_term(kPi2 * k.chi, t)) +
          32768.0 * e64 * aR2));
  return out;
}

std::vector<InequalityResult> check_positive_scalar(const Trajectory& traj,
                                                    double S) {
  require_samples(traj);
  static const char* ids[3] = {"posscalar.rc1_bound", "posscalar.rc2_spacetime",
                               "posscalar.rm2_spacetime"};
  const std::size_t i = nearest_sample(traj, S);
  const TrajectorySample& s = traj.samples[i];
  const double t = s.t;
  if (!(traj.samples.front().inst.minR > 0.0)) {
    std::vector<InequalityResult> out;
    for (const char* id : ids) out.push_back(unmet(id, t));
    return out;
  }
  const BoundConstants k = bound_constants(traj);
  const double a0 = k.a0(t);
  const double e64 = std::exp(64.0 * t);
  const double aR2 = s.acc.r2;
  std::vector<InequalityResult> out;
  out.push_back(
      bound_result(ids[0], t, s.inst.rc1, 2.0 * a0 + 2048.0 * e64 * aR2));
  out.push_back(
      bound_result(ids[1], t, s.acc.rcp[1], 8.0 * a0 + 8192.0 * e64 * aR2));
  out.push_back(bound_result(ids[2], t, s.acc.rm2,
                             chi_term(32.0 * kPi2 * k.chi, t) + 32.0 * a0 +
                                 32768.0 * e64 * aR2));
  return out;
}

std::vector<ResidualSample> identity_residual_series(const Trajectory& traj) {
  require_samples(traj);
  const std::vector<double> f = f_samples(traj);
  std::vector<double> rhs(traj.samples.size(), 0.0);
  for (std::size_t j = 0; j < traj.samples.size(); ++j) {
    const auto pts = point_data(traj.samples[j].state);
    const Sym2Tensor id = Sym2Tensor::identity();
    double acc = 0.0;
    for (const PointData& p : pts) {
      const PointwiseDensities d = pointwise_densities(
          p.curvature, p.ricci, p.scalR, p.derivs, id, 2.0);
      const double den = p.scalR + 2.0;
      acc += (-2.0 * d.zNorm2 / (den * den * den) -
              2.0 * d.fDensity * d.fDensity + 4.0 * d.rmBilinear / den -
              d.fDensity * p.scalR) *
             p.weight;
    }
    rhs[j] = acc;
  }
  return residual_series(traj, f, rhs);
}

std::vector<ResidualSample> differential_residual_series(
    const Trajectory& traj, DifferentialVariant variant) {
  require_samples(traj);
  const double chi = static_cast<double>(traj.entry->chi);
  const std::vector<double> f = f_samples(traj);
  std::vector<double> rhs(traj.samples.size(), 0.0);
  for (std::size_t j = 0; j < traj.samples.size(); ++j) {
    const InstantIntegrals& q = traj.samples[j].inst;
    rhs[j] = variant == DifferentialVariant::General
                 ? 256.0 * kPi2 * chi - q.f2 + 64.0 * q.f + 1024.0 * q.r2
                 : 128.0 * kPi2 * chi - q.f2 + 50.0 * q.f;
  }
  return residual_series(traj, f, rhs);
}

std::vector<InequalityResult> check_evolution_identity(const Trajectory& traj) {
  require_samples(traj);
  if (!traj.fAccumulatorValid)
    return {unmet("identity.f_evolution", traj.finalTime)};
  const auto series = identity_residual_series(traj);
  std::vector<double> f = f_samples(traj);
  std::vector<double> rhs;
  for (const auto& s : series) rhs.push_back(s.rhs);
  const double tol = fd_tolerance(traj, f, rhs);
  double worst = 0.0;
  double worstT = traj.samples.front().t;
  for (const auto& s : series) {
    if (std::abs(s.residual) > worst) {
      worst = std::abs(s.residual);
      worstT = s.t;
    }
  }
  return {bound_result("identity.f_evolution", worstT, worst, tol, 0.0)};
}

std::vector<InequalityResult> check_differential(const Trajectory& traj,
                                                 DifferentialVariant variant) {
  require_samples(traj);
  const std::string id = variant == DifferentialVariant::General
                             ? "differential.general"
                             : "differential.basic";
  if (variant == DifferentialVariant::Basic && !basic_holds(traj))
    return {unmet(id, traj.finalTime)};
  if (!(traj.samples.front().inst.minR > -1.0) || !traj.fAccumulatorValid)
    return {unmet(id, traj.finalTime)};
  const auto series = differential_residual_series(traj, variant);
  std::vector<double> f = f_samples(traj);
  std::vector<double> rhs;
  for (const auto& s : series) rhs.push_back(s.rhs);
  const double tol = fd_tolerance(traj, f, rhs);
  double worst = -std::numeric_limits<double>::infinity();
  double worstT = traj.samples.front().t;
  for (const auto& s : series) {
    if (s.residual > worst) {
      worst = s.residual;
      worstT = s.t;
    }
  }
  if (series.empty()) worst = 0.0;
  return {bound_result(id, worstT, worst, tol, 0.0)};
}

std::vector<InequalityResult> check_bounded_scalar(const Trajectory& traj) {
  require_samples(traj);
  static const char* ids[6] = {"basic.rc2_bound",   "basic.rm2_bound",
                               "basic.rc4_spacetime", "basic.rc_tail_p1",
                               "basic.rc_tail_p2",  "basic.rc_tail_p3"};
  std::vector<InequalityResult> out;
  if (!basic_holds(traj)) {
    for (const char* id : ids) out.push_back(unmet(id, traj.finalTime));
    return out;
  }
  const BoundConstants k = bound_constants(traj);
  const double chi = k.chi;

  InequalityResult rc2Worst, rm2Worst, rc4Worst;
  bool first = true;
  for (const auto& s : traj.samples) {
    const double bt = k.b(s.t);
    InequalityResult rc2 = bound_result(ids[0], s.t, s.inst.rc2, bt);
    InequalityResult rm2 = bound_result(
        ids[1], s.t, s.inst.rm2, 32.0 * kPi2 * chi + 4.0 * bt);
    InequalityResult rc4 = bound_result(ids[2], s.t, s.acc.rc4, bt);
    if (first || rc2.margin < rc2Worst.margin) rc2Worst = rc2;
    if (first || rm2.margin < rm2Worst.margin) rm2Worst = rm2;
    if (first || rc4.margin < rc4Worst.margin) rc4Worst = rc4;
    first = false;
  }
  out.push_back(rc2Worst);
  out.push_back(rm2Worst);
  out.push_back(rc4Worst);

  const TrajectorySample& last = traj.samples.back();
  const double T = last.t;
  const double bT = std::abs(k.b(T));
  for (int p = 1; p <= 3; ++p) {
    InequalityResult worst;
    bool any = false;
    for (std::size_t j = traj.samples.size() / 2; j + 1 < traj.samples.size();
         ++j) {
      const TrajectorySample& s = traj.samples[j];
      const double q = (4.0 - p) / 4.0;
      const double lhs = last.acc.rcp[p - 1] - s.acc.rcp[p - 1];
      const double rhs = std::pow(bT, p / 4.0) * std::exp(q * T) *
                         std::pow(k.vol0, q) * std::pow(T - s.t, q);
      InequalityResult r = bound_result(ids[2 + p], s.t, lhs, rhs);
      if (!any || r.margin < worst.margin) worst = r;
      any = true;
    }
    if (!any) worst = unmet(ids[2 + p], T);
    out.push_back(worst);
  }
  return out;
}

InequalityResult check_basic_assumptions(const Trajectory& traj) {
  require_samples(traj);
  const BasicAssumptions a = basic_assumptions_check(traj);
  InequalityResult r =
      bound_result("basic.assumptions", traj.finalTime, a.supAbsR, 1.0, 1e-9);
  // a hypothesis that does not hold is not a violated estimate
  if (r.status == CheckStatus::Fail || !std::isfinite(traj.finalTime))
    r.status = CheckStatus::PreconditionUnmet;
  return r;
}

std::vector<InequalityResult> check_scaled(const Trajectory& traj, double c,
                                           double windowStart,
                                           double windowEnd) {
  require_samples(traj);
  static const char* ids[3] = {"scaled.rc2_bound", "scaled.rm2_bound",
                               "scaled.rc4_window"};
  std::vector<InequalityResult> out;
  if (!(c > 0.0) || !basic_holds(traj)) {
    for (const char* id : ids) out.push_back(unmet(id, traj.finalTime * c));
    return out;
  }
  const BoundConstants k = bound_constants(traj);
  const Trajectory sc = parabolic_rescale(traj, c);

  InequalityResult rc2Worst, rm2Worst;
  bool first = true;
  for (const auto& s : sc.samples) {
    const double bt = k.b(s.t / c);
    InequalityResult rc2 = bound_result(ids[0], s.t, s.inst.rc2, bt);
    InequalityResult rm2 = bound_result(
        ids[1], s.t, s.inst.rm2, 32.0 * kPi2 * k.chi + 4.0 * bt);
    if (first || rc2.margin < rc2Worst.margin) rc2Worst = rc2;
    if (first || rm2.margin < rm2Worst.margin) rm2Worst = rm2;
    first = false;
  }
  out.push_back(rc2Worst);
  out.push_back(rm2Worst);

  if (c < 1.0) {
    out.push_back(unmet(ids[2], sc.finalTime));
    return out;
  }
  std::size_t i0 = nearest_sample(sc, windowStart);
  std::size_t i1 = nearest_sample(sc, windowEnd);
  if (i1 <= i0) i1 = std::min(i0 + 1, sc.samples.size() - 1);
  if (i1 <= i0) {
    out.push_back(unmet(ids[2], sc.finalTime));
    return out;
  }
  const double w0 = sc.samples[i0].t;
  const double w1 = sc.samples[i1].t;
  const double L = w1 - w0;
  const double lhs = sc.samples[i1].acc.rc4 - sc.samples[i0].acc.rc4;
  const double rhs = chi_term(50.0 * k.b(w0 / c), std::exp(50.0 * L)) +
                     chi_term(128.0 * kPi2 * k.chi, std::expm1(50.0 * L));
  out.push_back(bound_result(ids[2], w1, lhs, rhs));
  return out;
}

InequalityResult check_gradient(const Trajectory& traj) {
  require_samples(traj);
  if (!basic_holds(traj)) return unmet("gradient.grad_spacetime", traj.finalTime);
  const BoundConstants k = bound_constants(traj);
  const TrajectorySample& last = traj.samples.back();
  return bound_result("gradient.grad_spacetime", last.t, last.acc.grad,
                      k.gradBound(last.t));
}

std::vector<InequalityResult> check_rescaled_by_sup(const Trajectory& traj) {
  require_samples(traj);
  static const char* ids[4] = {"krescale.rc2_bound", "krescale.rm2_bound",
                               "krescale.rc4_spacetime",
                               "krescale.grad_spacetime"};
  std::vector<InequalityResult> out;
  const double K = traj.supAbsR();
  if (!(K >= 1.0) || !std::isfinite(traj.finalTime)) {
    for (const char* id : ids) out.push_back(unmet(id, traj.finalTime));
    return out;
  }
  const BoundConstants k = bound_constants(traj);
  InequalityResult rc2Worst, rm2Worst;
  bool first = true;
  for (const auto& s : traj.samples) {
    const double bt = k.b(K * s.t);
    InequalityResult rc2 = bound_result(ids[0], s.t, s.inst.rc2, bt);
    InequalityResult rm2 = bound_result(
        ids[1], s.t, s.inst.rm2, 32.0 * kPi2 * k.chi + 4.0 * bt);
    if (first || rc2.margin < rc2Worst.margin) rc2Worst = rc2;
    if (first || rm2.margin < rm2Worst.margin) rm2Worst = rm2;
    first = false;
  }
  out.push_back(rc2Worst);
  out.push_back(rm2Worst);
  const TrajectorySample& last = traj.samples.back();
  out.push_back(bound_result(ids[2], last.t, last.acc.rc4,
                             K * k.b(K * last.t)));
  out.push_back(bound_result(ids[3], last.t, last.acc.grad,
                             K * K * K * k.gradBound(K * last.t)));
  return out;
}

InequalityResult check_gauss_bonnet(const GeometryState& state) {
  validate_state(state);
  std::vector<PointScalars> pts;
  density_scalars(state, pts);
  double total = 0.0;
  for (const PointScalars& p : pts)
    total += (p.rm2 - 4.0 * p.rc2 + p.scalR * p.scalR) * p.weight;
  const double lhs = total / (32.0 * kPi2);
  const double rhs = static_cast<double>(state.entry->chi);
  const double tol = state.entry->kind == FamilyKind::Warped ? 1e-6 : 1e-10;
  return equality_result("gaussbonnet.euler_characteristic", state.time, lhs,
                         rhs, tol);
}

InequalityResult check_scalar_min_monotone(const Trajectory& traj) {
  require_samples(traj);
  if (traj.samples.size() < 2)
    throw DomainError("monotonicity needs at least two samples");
  const double tol = 10.0 * traj.config.relTol;
  InequalityResult worst = bound_result(
      "maxprinciple.min_scalar_monotone", traj.samples.front().t,
      traj.samples.front().inst.minR, traj.samples[1].inst.minR, tol);
  for (std::size_t j = 1; j + 1 < traj.samples.size(); ++j) {
    InequalityResult r = bound_result(
        "maxprinciple.min_scalar_monotone", traj.samples[j].t,
        traj.samples[j].inst.minR, traj.samples[j + 1].inst.minR, tol);
    if (r.margin < worst.margin) worst = r;
  }
  return worst;
}

InequalityResult check_volume_identity(const Trajectory& traj) {
  require_samples(traj);
  std::vector<double> vol, rhs;
  for (const auto& s : traj.samples) {
    vol.push_back(s.inst.vol);
    rhs.push_back(-s.inst.r);
  }
  const auto series = residual_series(traj, vol, rhs);
  const double tol = fd_tolerance(traj, vol, rhs);
  double worst = 0.0;
  double worstT = traj.samples.front().t;
  for (const auto& s : series) {
    if (std::abs(s.residual) > worst) {
      worst = std::abs(s.residual);
      worstT = s.t;
    }
  }
  return bound_result("maxprinciple.volume_derivative", worstT, worst, tol,
                      0.0);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "main",     "posscalar", "differential", "identity",    "basic",
      "scaled",   "gradient",  "krescale",     "gaussbonnet", "maxprinciple"};
  return names;
}

std::vector<InequalityResult> run_suite(std::string_view suite,
                                        const Trajectory& traj,
                                        const SuiteOptions& options) {
  require_samples(traj);
  const double T = traj.samples.back().t;
  if (suite == "main") return check_main(traj, T);
  if (suite == "posscalar") return check_positive_scalar(traj, T);
  if (suite == "differential") {
    auto out = check_differential(traj, DifferentialVariant::General);
    auto basic = check_differential(traj, DifferentialVariant::Basic);
    out.insert(out.end(), basic.begin(), basic.end());
    return out;
  }
  if (suite == "identity") return check_evolution_identity(traj);
  if (suite == "basic") {
    std::vector<InequalityResult> out{check_basic_assumptions(traj)};
    auto bounds = check_bounded_scalar(traj);
    out.insert(out.end(), bounds.begin(), bounds.end());
    return out;
  }
  if (suite == "scaled") {
    const double c = options.scaleFactor;
    return check_scaled(traj, c, options.windowStartFrac * c * T, c * T);
  }
  if (suite == "gradient") return {check_gradient(traj)};
  if (suite == "krescale") return check_rescaled_by_sup(traj);
  if (suite == "gaussbonnet") {
    const std::size_t n = traj.samples.size();
    InequalityResult worst = check_gauss_bonnet(traj.samples.front().state);
    for (std::size_t i : {n / 2, n - 1}) {
      InequalityResult r = check_gauss_bonnet(traj.samples[i].state);
      if (r.margin < worst.margin) worst = r;
    }
    if (!std::isnan(options.equalityTolOverride)) {
      worst.tolerance = options.equalityTolOverride;
      worst.status = margin_passes(worst.margin, worst.lhs, worst.rhs,
                                   worst.tolerance)
                         ? CheckStatus::Pass
                         : CheckStatus::Fail;
    }
    return {worst};
  }
  if (suite == "maxprinciple")
    return {check_scalar_min_monotone(traj), check_volume_identity(traj)};
  throw UnknownSuite("unknown suite: " + std::string(suite));
}

}  // namespace ricci
