#include "ricci/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace ricci {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kAccCount = 9;

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0,
                 A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0,
                 A65 = -5103.0 / 18656.0;
constexpr double A71 = 35.0 / 384.0, A73 = 500.0 / 1113.0,
                 A74 = 125.0 / 192.0, A75 = -2187.0 / 6784.0,
                 A76 = 11.0 / 84.0;
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0,
                 C5 = 8.0 / 9.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0,
                 E4 = 71.0 / 1920.0, E5 = -17253.0 / 339200.0,
                 E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
// Dense-output weights.
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

struct DenseSegment {
  double t0, h;
  std::vector<double> r1, r2, r3, r4, r5;
};

void interpolate(const DenseSegment& s, double t, std::vector<double>& out) {
  const double th = s.h != 0.0 ? (t - s.t0) / s.h : 0.0;
  const double th1 = 1.0 - th;
  out.resize(s.r1.size());
  for (std::size_t i = 0; i < s.r1.size(); ++i)
    out[i] = s.r1[i] +
             th * (s.r2[i] + th1 * (s.r3[i] + th * (s.r4[i] + th1 * s.r5[i])));
}

int geometry_dim(const GeometryState& state) {
  return static_cast<int>(state.params.size());
}

// rc-direction index driving each parameter slot.
std::vector<int> param_directions(const CatalogEntry& entry) {
  if (entry.name == "S4") return {0};
  if (entry.name == "S2xS2") return {0, 2};
  return {0, 1, 2, 3};
}

bool state_valid(const CatalogEntry& entry, std::span<const double> geom) {
  if (entry.kind == FamilyKind::Warped) {
    for (double v : geom)
      if (!(v > kWarpFieldFloor) || !std::isfinite(v)) return false;
    return true;
  }
  for (double v : geom)
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  return true;
}

// Augmented right-hand side: geometry derivative plus accumulator densities.
// Returns false when the state is outside the admissible domain (the caller
// rejects the step).  fOK reports whether R + 2 > 0 held pointwise.
class AugmentedSystem {
 public:
  AugmentedSystem(const CatalogEntry& entry, const GeometryState& proto)
      : entry_(entry), scratchState_(proto) {}

  bool operator()(std::span<const double> y, std::span<double> dydt,
                  bool& fOK) {
    const int gd = static_cast<int>(y.size()) - kAccCount;
    std::span<const double> geom(y.data(), static_cast<std::size_t>(gd));
    if (!state_valid(entry_, geom)) return false;

    scratchState_.params.assign(geom.begin(), geom.end());

    if (entry_.kind == FamilyKind::Warped) {
      const WarpedGeometry g = warped_geometry(scratchState_);
      const int n = g.n;
      for (int j = 0; j < n; ++j) {
        const std::size_t ju = static_cast<std::size_t>(j);
        dydt[ju] = -g.rho0[ju] * y[ju];                    // phi
        dydt[static_cast<std::size_t>(n + j)] =
            -g.rho1[ju] * y[static_cast<std::size_t>(n + j)];  // psi
      }
    } else {
      const auto rc = frame_ricci_diagonal(entry_, geom);
      const auto dirs = param_directions(entry_);
      for (std::size_t i = 0; i < dirs.size(); ++i)
        dydt[i] = -2.0 * rc[static_cast<std::size_t>(dirs[i])] * y[i];
    }

    density_scalars(scratchState_, scratch_);
    double dR2 = 0, dF2 = 0, dRc4 = 0, dRm2 = 0, dGrad = 0, dVol = 0;
    double dRc1 = 0, dRc2i = 0, dRc3 = 0;
    fOK = true;
    for (const PointScalars& p : scratch_) {
      const double w = p.weight;
      dR2 += p.scalR * p.scalR * w;
      dRc4 += p.rc2 * p.rc2 * w;
      dRm2 += p.rm2 * w;
      dGrad += p.grad2 * w;
      dVol += w;
      const double rcNorm = std::sqrt(p.rc2);
      dRc1 += rcNorm * w;
      dRc2i += p.rc2 * w;
      dRc3 += rcNorm * p.rc2 * w;
      const double den = p.scalR + 2.0;
      if (den > 0.0) {
        const double f = p.rc2 / den;
        dF2 += f * f * w;
      } else {
        fOK = false;
      }
    }
    const std::size_t base = static_cast<std::size_t>(gd);
    dydt[base + 0] = dR2;
    dydt[base + 1] = dF2;
    dydt[base + 2] = dRc4;
    dydt[base + 3] = dRm2;
    dydt[base + 4] = dGrad;
    dydt[base + 5] = dVol;
    dydt[base + 6] = dRc1;
    dydt[base + 7] = dRc2i;
    dydt[base + 8] = dRc3;
    return true;
  }

  double max_abs_rm(std::span<const double> y) {
    const int gd = static_cast<int>(y.size()) - kAccCount;
    std::span<const double> geom(y.data(), static_cast<std::size_t>(gd));
    if (!state_valid(entry_, geom)) return kInf;
    scratchState_.params.assign(geom.begin(), geom.end());
    density_scalars(scratchState_, scratch_);
    double m = 0.0;
    for (const PointScalars& p : scratch_) m = std::max(m, p.rm2);
    return std::sqrt(m);
  }

  double max_explicit_step(std::span<const double> y,
                           const FlowConfig& config) const {
    if (entry_.kind != FamilyKind::Warped) return kInf;
    const int n = (static_cast<int>(y.size()) - kAccCount) / 2;
    double minField = kInf;
    for (int j = 0; j < 2 * n; ++j)
      minField = std::min(minField, y[static_cast<std::size_t>(j)]);
    const double dtheta = 2.0 * std::numbers::pi / n;
    return config.warpedStabilityFactor * (dtheta * minField) *
           (dtheta * minField);
  }

 private:
  const CatalogEntry& entry_;
  GeometryState scratchState_;
  std::vector<PointScalars> scratch_;
};

InstantIntegrals instant_integrals(const GeometryState& state) {
  InstantIntegrals out;
  const auto pts = point_data(state);
  const Sym2Tensor id = Sym2Tensor::identity();
  bool first = true;
  for (const PointData& p : pts) {
    const Norms n = norms(p.curvature, p.ricci, id);
    double grad2 = 0.0;
    for (double v : p.derivs.gradRc) grad2 += v * v;
    const double w = p.weight;
    const double rcNorm = std::sqrt(n.rc2);
    out.rc1 += rcNorm * w;
    out.rc2 += n.rc2 * w;
    out.rm2 += n.rm2 * w;
    out.r2 += p.scalR * p.scalR * w;
    out.r += p.scalR * w;
    out.grad += grad2 * w;
    out.vol += w;
    const double den = p.scalR + 2.0;
    if (den > 0.0) {
      const double f = n.rc2 / den;
      out.f += f * w;
      out.f2 += f * f * w;
    } else {
      out.fValid = false;
    }
    if (first) {
      out.minR = out.maxR = p.scalR;
      first = false;
    } else {
      out.minR = std::min(out.minR, p.scalR);
      out.maxR = std::max(out.maxR, p.scalR);
    }
  }
  return out;
}

TrajectorySample make_sample(const CatalogEntry& entry,
                             const GeometryState& proto, double t,
                             std::span<const double> y) {
  TrajectorySample s;
  s.t = t;
  s.state = proto;
  const std::size_t gd = y.size() - kAccCount;
  s.state.params.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(gd));
  s.state.time = t;
  s.inst = instant_integrals(s.state);
  s.acc.r2 = y[gd + 0];
  s.acc.f2 = y[gd + 1];
  s.acc.rc4 = y[gd + 2];
  s.acc.rm2 = y[gd + 3];
  s.acc.grad = y[gd + 4];
  s.acc.vol = y[gd + 5];
  s.acc.rcp = {y[gd + 6], y[gd + 7], y[gd + 8]};
  (void)entry;
  return s;
}

}  // namespace

double Trajectory::supAbsR() const {
  double m = 0.0;
  for (const auto& s : samples)
    m = std::max({m, std::abs(s.inst.minR), std::abs(s.inst.maxR)});
  return m;
}

std::vector<double> flow_rhs(const GeometryState& state) {
  validate_state(state);
  const auto& entry = *state.entry;
  std::vector<double> out(state.params.size(), 0.0);
  if (entry.kind == FamilyKind::Warped) {
    const WarpedGeometry g = warped_geometry(state);
    const int n = g.n;
    for (int j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(j)] =
          -g.rho0[static_cast<std::size_t>(j)] * state.params[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(n + j)] =
          -g.rho1[static_cast<std::size_t>(j)] *
          state.params[static_cast<std::size_t>(n + j)];
    }
    return out;
  }
  const auto rc = frame_ricci_diagonal(entry, state.params);
  const auto dirs = param_directions(entry);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    out[i] = -2.0 * rc[static_cast<std::size_t>(dirs[i])] * state.params[i];
  return out;
}

GeometryState scale_metric(const GeometryState& state, double c) {
  if (!(c > 0.0)) throw DomainError("metric scale factor must be positive");
  GeometryState out = state;
  const double factor =
      state.entry->kind == FamilyKind::Warped ? std::sqrt(c) : c;
  for (double& v : out.params) v *= factor;
  return out;
}

NormalizeResult normalize_initial(const GeometryState& state) {
  const auto pts = point_data(state);
  double minR = kInf;
  for (const auto& p : pts) minR = std::min(minR, p.scalR);
  if (minR > -1.0) return {state, 1.0};
  const double c = std::abs(minR) * (1.0 + 1e-9);
  return {scale_metric(state, c), c};
}

Trajectory evolve(const CatalogEntry& entry, const GeometryState& initial,
                  const FlowConfig& config) {
  validate_state(initial);
  if (initial.entry != &entry) throw DomainError("state family mismatch");
  if (!(config.tEnd > 0.0) || !std::isfinite(config.tEnd))
    throw DomainError("tEnd must be positive and finite");
  if (config.reportCount < 2) throw DomainError("reportCount must be >= 2");
  if (!(config.relTol > 0.0) || !(config.absTol > 0.0))
    throw DomainError("tolerances must be positive");

  const int gd = geometry_dim(initial);
  const std::size_t dim = static_cast<std::size_t>(gd + kAccCount);
  AugmentedSystem sys(entry, initial);

  std::vector<double> y(dim, 0.0);
  std::copy(initial.params.begin(), initial.params.end(), y.begin());

  Trajectory traj;
  traj.entry = &entry;
  traj.config = config;

  std::vector<DenseSegment> segments;
  double t = 0.0;
  double finalT = config.tEnd;
  Termination termination = Termination::ReachedEnd;

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), ytmp(dim), ynew(dim), yerr(dim);

  bool fOK = true;
  bool fValidAll = true;
  if (sys.max_abs_rm(y) > config.blowupCurvatureCap) {
    // Initial data already beyond the cap.
    traj.termination = Termination::Blowup;
    traj.finalTime = 0.0;
    traj.samples.push_back(make_sample(entry, initial, 0.0, y));
    return traj;
  }
  if (!sys(y, k1, fOK)) throw DomainError("initial state rejected");
  fValidAll = fValidAll && fOK;

  double h = std::min({config.tEnd * 1e-3, sys.max_explicit_step(y, config),
                       config.tEnd});
  bool rejected = false;
  const int maxSteps = 2000000;
  int step = 0;

  while (t < config.tEnd) {
    if (++step > maxSteps) {
      termination = Termination::Stiffness;
      finalT = t;
      break;
    }
    h = std::min(h, config.tEnd - t);
    const double hFloor = 1e-14 * std::max(1.0, std::abs(t));
    if (h < hFloor) {
      termination = sys.max_abs_rm(y) > 0.01 * config.blowupCurvatureCap
                        ? Termination::Blowup
                        : Termination::Stiffness;
      finalT = t;
      break;
    }

    bool stageOK = true;
    bool fOKStage = true;
    auto stage = [&](std::vector<double>& k, double /*c*/,
                     std::initializer_list<std::pair<const std::vector<double>*, double>>
                         terms) {
      for (std::size_t i = 0; i < dim; ++i) {
        double v = y[i];
        for (const auto& [kv, a] : terms) v += h * a * (*kv)[i];
        ytmp[i] = v;
      }
      bool dummy = true;
      stageOK = stageOK && sys(ytmp, k, dummy);
    };

    stage(k2, C2, {{&k1, A21}});
    if (stageOK) stage(k3, C3, {{&k1, A31}, {&k2, A32}});
    if (stageOK) stage(k4, C4, {{&k1, A41}, {&k2, A42}, {&k3, A43}});
    if (stageOK)
      stage(k5, C5, {{&k1, A51}, {&k2, A52}, {&k3, A53}, {&k4, A54}});
    if (stageOK)
      stage(k6, 1.0,
            {{&k1, A61}, {&k2, A62}, {&k3, A63}, {&k4, A64}, {&k5, A65}});
    if (stageOK) {
      for (std::size_t i = 0; i < dim; ++i)
        ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] +
                              A75 * k5[i] + A76 * k6[i]);
      stageOK = sys(ynew, k7, fOKStage) &&
                state_valid(entry, std::span<const double>(
                                       ynew.data(), static_cast<std::size_t>(gd)));
    }

    if (!stageOK) {
      h *= 0.3;
      rejected = true;
      continue;
    }

    double errNorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                     E6 * k6[i] + E7 * k7[i]);
      const double sc = config.absTol +
                        config.relTol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double q = yerr[i] / sc;
      errNorm += q * q;
    }
    errNorm = std::sqrt(errNorm / static_cast<double>(dim));

    if (errNorm > 1.0) {
      const double fac =
          std::clamp(0.9 * std::pow(errNorm, -0.2), 0.1, 0.5);
      h *= fac;
      rejected = true;
      continue;
    }

    // Accepted: record the dense-output segment.
    DenseSegment seg;
    seg.t0 = t;
    seg.h = h;
    seg.r1.resize(dim);
    seg.r2.resize(dim);
    seg.r3.resize(dim);
    seg.r4.resize(dim);
    seg.r5.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double dy = ynew[i] - y[i];
      seg.r1[i] = y[i];
      seg.r2[i] = dy;
      seg.r3[i] = h * k1[i] - dy;
      seg.r4[i] = dy - h * k7[i] - seg.r3[i];
      seg.r5[i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                       D6 * k6[i] + D7 * k7[i]);
    }
    segments.push_back(std::move(seg));

    fValidAll = fValidAll && fOKStage;
    const double tNew = t + h;
    if (sys.max_abs_rm(ynew) > config.blowupCurvatureCap) {
      // Bisect inside the last segment for the latest time under the cap.
      double lo = t, hi = tNew;
      std::vector<double> ymid;
      for (int it = 0; it < 80 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        interpolate(segments.back(), mid, ymid);
        if (sys.max_abs_rm(ymid) > config.blowupCurvatureCap)
          hi = mid;
        else
          lo = mid;
      }
      termination = Termination::Blowup;
      finalT = lo;
      t = tNew;
      break;
    }

    t = tNew;
    y.swap(ynew);
    k1.swap(k7);  // FSAL

    double fac = 0.9 * std::pow(std::max(errNorm, 1e-10), -0.2);
    fac = std::clamp(fac, 0.2, 10.0);
    if (rejected) fac = std::min(fac, 1.0);
    rejected = false;
    h = std::min(h * fac, sys.max_explicit_step(y, config));
  }

  if (termination == Termination::ReachedEnd) finalT = config.tEnd;
  traj.termination = termination;
  traj.finalTime = finalT;
  traj.fAccumulatorValid = fValidAll;

  // Uniform report times on [0, finalT] through the dense interpolant.
  const int n = config.reportCount;
  std::vector<double> yq;
  std::size_t segIdx = 0;
  for (int j = 0; j < n; ++j) {
    const double tq = segments.empty()
                          ? 0.0
                          : finalT * (static_cast<double>(j) /
                                      static_cast<double>(n - 1));
    if (segments.empty()) {
      traj.samples.push_back(make_sample(entry, initial, 0.0, y));
      break;
    }
    while (segIdx + 1 < segments.size() &&
           segments[segIdx].t0 + segments[segIdx].h < tq)
      ++segIdx;
    interpolate(segments[segIdx], tq, yq);
    traj.samples.push_back(make_sample(entry, initial, tq, yq));
  }
  return traj;
}

Trajectory parabolic_rescale(const Trajectory& traj, double c) {
  if (!(c > 0.0)) throw DomainError("rescale factor must be positive");
  Trajectory out;
  out.entry = traj.entry;
  out.config = traj.config;
  out.config.tEnd = traj.config.tEnd * c;
  out.termination = traj.termination;
  out.finalTime = traj.finalTime * c;
  out.fAccumulatorValid = traj.fAccumulatorValid;
  out.samples.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    TrajectorySample r;
    r.t = c * s.t;
    r.state = scale_metric(s.state, c);
    r.state.time = r.t;
    r.inst = instant_integrals(r.state);
    r.acc.r2 = c * s.acc.r2;
    r.acc.rc4 = s.acc.rc4 / c;
    r.acc.rm2 = c * s.acc.rm2;
    r.acc.grad = s.acc.grad;
    r.acc.vol = c * c * c * s.acc.vol;
    r.acc.rcp = {c * c * s.acc.rcp[0], c * s.acc.rcp[1], s.acc.rcp[2]};
    out.samples.push_back(std::move(r));
  }
  // f^2 is not scale covariant; rebuild its accumulator by trapezoid.
  double acc = 0.0;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    if (i > 0) {
      const double dt = out.samples[i].t - out.samples[i - 1].t;
      acc += 0.5 * (out.samples[i].inst.f2 + out.samples[i - 1].inst.f2) * dt;
    }
    out.samples[i].acc.f2 = acc;
  }
  return out;
}

BasicAssumptions basic_assumptions_check(const Trajectory& traj) {
  const double sup = traj.supAbsR();
  const bool holds = sup <= 1.0 + 1e-9 && std::isfinite(traj.finalTime);
  return {holds, sup};
}

}  // namespace ricci
