#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ricci/flow.hpp"

namespace ricci {

enum class CheckStatus { Pass, Fail, PreconditionUnmet };

std::string_view to_string(CheckStatus s);

// Default relative margin tolerance; equality-type checks carry their own.
inline constexpr double kDefaultMarginTol = 1e-7;

// One checked estimate.  margin = rhs - lhs for one-sided bounds and
// -|lhs - rhs| for equality checks, so larger is always better.
struct InequalityResult {
  std::string checkId;
  double evalTime = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  CheckStatus status = CheckStatus::Fail;
  double tolerance = kDefaultMarginTol;
};

// PASS rule shared by every check: margin >= -tolerance * max(1,|lhs|,|rhs|).
bool margin_passes(double margin, double lhs, double rhs, double tolerance);

// Topological and initial-data quantities from which every closed-form
// bound is assembled.  All fields come from the initial sample and chi.
struct BoundConstants {
  double chi = 0.0;
  double intF0 = 0.0;         // int |Rc|^2/(R+2) dmu at t = 0
  double intRc2OverR0 = 0.0;  // int |Rc|^2/R dmu at t = 0; NaN unless R(0) > 0
  double intRc2_0 = 0.0;      // int |Rc|^2 dmu at t = 0
  double vol0 = 0.0;

  // c0(S) = 4 pi^2 chi (e^{64S}-1) + e^{64S} intF0
  double c0(double S) const;
  // a0(S) = 4 pi^2 chi (e^{64S}-1) + e^{64S} intRc2OverR0
  double a0(double S) const;
  // b(t)  = 50 e^{50t} intRc2_0 + 128 pi^2 chi (e^{50t}-1)
  double b(double t) const;
  // B(T)  = intRc2_0 + b(T) + 2^9 pi^2 chi T
  //         + 2^6 ((e^{50T}-1) intRc2_0 + 128 pi^2 chi (e^{50T}/50 - 1/50 - T))
  double gradBound(double T) const;
};

BoundConstants bound_constants(const Trajectory& traj);

// Index of the report sample closest to time t.
std::size_t nearest_sample(const Trajectory& traj, double t);

// The four bounds at time S (snapped to the nearest report sample), each
// against c0(S) and the accumulated int int R^2:
//   int f(S) + int int f^2          <= c0 + 2^10 e^{64S} A_R2
//   int |Rc|(S)                     <= vol(S) + 2 c0 + 2^11 e^{64S} A_R2
//   int int |Rc|^2                  <= int vol + 2^3 c0 + 2^13 e^{64S} A_R2
//   int int |Rm|^2                  <= 4 int vol + 2^5 (c0 + pi^2 chi S)
//                                       + 2^15 e^{64S} A_R2
// PreconditionUnmet when min R(0) <= -1.
std::vector<InequalityResult> check_main(const Trajectory& traj, double S);

// Volume-free variants against a0(S); requires min R(0) > 0:
//   int |Rc|(S)    <= 2 a0 + 2^11 e^{64S} A_R2
//   int int |Rc|^2 <= 2^3 a0 + 2^13 e^{64S} A_R2
//   int int |Rm|^2 <= 2^5 pi^2 chi S + 2^5 a0 + 2^15 e^{64S} A_R2
std::vector<InequalityResult> check_positive_scalar(const Trajectory& traj,
                                                    double S);

enum class DifferentialVariant { General, Basic };

// One interior report time of a finite-difference residual series.
struct ResidualSample {
  double t = 0.0;
  double numericDeriv = 0.0;  // central difference of the sampled integral
  double rhs = 0.0;           // analytic right-hand side at that sample
  double residual = 0.0;      // numericDeriv - rhs
};

// Residuals of the exact identity
//   d/dt int f = int (-2|Z|^2/(R+2)^3 - 2 f^2 + 4 Rm(Rc,Rc)/(R+2) - f R)
// at every interior report time.
std::vector<ResidualSample> identity_residual_series(const Trajectory& traj);

// Residuals of the differential bound d/dt int f <= RHS with
//   General: 2^8 pi^2 chi + int (-f^2 + 64 f + 2^10 R^2)
//   Basic:   2^7 pi^2 chi + int (-f^2 + 50 f)         (needs sup|R| <= 1)
std::vector<ResidualSample> differential_residual_series(
    const Trajectory& traj, DifferentialVariant variant);

// Aggregated checks over the residual series: lhs is the worst excess
// (signed for the bound, absolute for the identity), rhs the estimated
// finite-difference tolerance derived from third differences.
std::vector<InequalityResult> check_evolution_identity(const Trajectory& traj);
std::vector<InequalityResult> check_differential(const Trajectory& traj,
                                                 DifferentialVariant variant);

// Bounded-scalar bounds (require sup|R| <= 1 and a finite horizon):
//   int |Rc|^2 (t)    <= b(t)                 at every report time
//   int |Rm|^2 (t)    <= 32 pi^2 chi + 4 b(t)
//   int int |Rc|^4    <= b(t)
//   tail p in {1,2,3}: int_S^T int |Rc|^p
//       <= |b(T)|^{p/4} e^{(4-p)T/4} vol(0)^{(4-p)/4} (T-S)^{(4-p)/4}
// on a grid of S approaching T.
std::vector<InequalityResult> check_bounded_scalar(const Trajectory& traj);

// sup|R| <= 1 (+1e-9 slack) over all samples and a finite final time.
InequalityResult check_basic_assumptions(const Trajectory& traj);

// Bounds for the rescaled solution gt(s) = c g(s/c) on the window
// [windowStart, windowEnd] (rescaled clock, snapped to samples):
//   int |Rc|^2 (gt, s) <= b(g(0), s/c)        at every sample
//   int |Rm|^2 (gt, s) <= 32 pi^2 chi + 4 b(g(0), s/c)
//   window quartic bound, c >= 1 only:
//       int_{W0}^{W1} int |Rc|^4 <= 50 e^{50L} b(g(0), W0/c)
//                                   + 128 pi^2 chi (e^{50L}-1),  L = W1 - W0.
std::vector<InequalityResult> check_scaled(const Trajectory& traj, double c,
                                           double windowStart,
                                           double windowEnd);

// int int |gradRc|^2 over the whole run against the closed-form budget
// gradBound(T).
InequalityResult check_gradient(const Trajectory& traj);

// The bounded-scalar bounds rescaled by K = sup|R| when K >= 1:
//   int |Rc|^2 (t) <= b(Kt);  int |Rm|^2 (t) <= 32 pi^2 chi + 4 b(Kt)
//   int int |Rc|^4 <= K b(KT);  int int |gradRc|^2 <= K^3 gradBound(KT)
std::vector<InequalityResult> check_rescaled_by_sup(const Trajectory& traj);

// Equality check int (|Rm|^2 - 4|Rc|^2 + R^2) dmu = 32 pi^2 chi; tolerance
// 1e-10 for the exactly integrated families, 1e-6 for the gridded one.
InequalityResult check_gauss_bonnet(const GeometryState& state);

// min R over samples nondecreasing within 10 * relTol.
InequalityResult check_scalar_min_monotone(const Trajectory& traj);

// Central-difference d/dt vol against -int R dmu at interior samples.
InequalityResult check_volume_identity(const Trajectory& traj);

struct SuiteOptions {
  double scaleFactor = 2.0;       // c for the scaled suite
  double windowStartFrac = 0.25;  // scaled window start as fraction of cT
  // Replaces the built-in tolerance of equality-type checks when not NaN;
  // 0 turns any nonzero discretization residual into a reported FAIL.
  double equalityTolOverride = std::numeric_limits<double>::quiet_NaN();
};

const std::vector<std::string>& suite_names();

// Dispatches one named suite; throws UnknownSuite.
std::vector<InequalityResult> run_suite(std::string_view suite,
                                        const Trajectory& traj,
                                        const SuiteOptions& options = {});

}  // namespace ricci
