#pragma once

#include <array>
#include <vector>

#include "ricci/catalog.hpp"

namespace ricci {

struct FlowConfig {
  double relTol = 1e-9;
  double absTol = 1e-12;
  double tEnd = 1.0;
  double blowupCurvatureCap = 1e8;      // on max |Rm|
  double warpedStabilityFactor = 0.2;   // explicit-step bound factor
  int reportCount = 200;                // uniformly spaced report times
};

enum class Termination { ReachedEnd, Blowup, Stiffness };

// Time integrals carried as augmented ODE state alongside the geometry.
struct Accumulators {
  double r2 = 0.0;    // int int R^2
  double f2 = 0.0;    // int int f^2,  f = |Rc|^2/(R+2)
  double rc4 = 0.0;   // int int |Rc|^4
  double rm2 = 0.0;   // int int |Rm|^2
  double grad = 0.0;  // int int |grad Rc|^2
  double vol = 0.0;   // int vol dt
  std::array<double, 3> rcp{0.0, 0.0, 0.0};  // int int |Rc|^p, p = 1,2,3
};

// Instantaneous spatial integrals at one report time.
struct InstantIntegrals {
  double f = 0.0;      // int f dmu (c = 2)
  double f2 = 0.0;     // int f^2 dmu
  double rc1 = 0.0;    // int |Rc| dmu
  double rc2 = 0.0;    // int |Rc|^2 dmu
  double rm2 = 0.0;    // int |Rm|^2 dmu
  double r2 = 0.0;     // int R^2 dmu
  double r = 0.0;      // int R dmu
  double grad = 0.0;   // int |grad Rc|^2 dmu
  double vol = 0.0;
  double minR = 0.0;
  double maxR = 0.0;
  bool fValid = true;  // R + 2 > 0 held at every quadrature point
};

struct TrajectorySample {
  double t = 0.0;
  GeometryState state;
  InstantIntegrals inst;
  Accumulators acc;
};

struct Trajectory {
  const CatalogEntry* entry = nullptr;
  FlowConfig config;
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::ReachedEnd;
  double finalTime = 0.0;
  bool fAccumulatorValid = true;  // R + 2 > 0 held along the whole flow

  double supAbsR() const;
};

// Geometry part of the evolution d g/dt = -2 Rc for one state: parameter
// derivatives for the reduced families, field derivatives for the warped one.
std::vector<double> flow_rhs(const GeometryState& state);

struct NormalizeResult {
  GeometryState state;
  double scaleApplied;  // 1 when no scaling was needed
};

// Scales the metric so inf R > -1 when the input has inf R <= -1:
// g -> c g with c = |inf R| (1 + 1e-9).
NormalizeResult normalize_initial(const GeometryState& state);

// g -> c g; squared frame scales multiply by c, warp fields by sqrt(c).
GeometryState scale_metric(const GeometryState& state, double c);

Trajectory evolve(const CatalogEntry& entry, const GeometryState& initial,
                  const FlowConfig& config);

// Parabolic rescaling t -> c t, g -> c g of a computed trajectory.  Scale
// covariant accumulators transform by their exact powers of c; the f^2
// accumulator is not scale covariant and is re-integrated by trapezoid from
// the rescaled samples.
Trajectory parabolic_rescale(const Trajectory& traj, double c);

struct BasicAssumptions {
  bool holds;
  double supAbsR;
};

// sup |R| <= 1 + 1e-9 over all samples and a finite final time.
BasicAssumptions basic_assumptions_check(const Trajectory& traj);

}  // namespace ricci
