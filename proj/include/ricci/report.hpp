#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ricci/estimates.hpp"

namespace ricci {

// One configured run: a family, its initial data, a horizon, and the check
// suites to evaluate on the resulting trajectory.
struct Scenario {
  std::string id;
  std::string family;
  std::map<std::string, double> params;  // parameter families
  FourierSeries phi, psi;                // warped initial fields
  bool hasWarpSpec = false;
  int gridN = 0;  // 0 = family default
  double tEnd = 1.0;
  std::vector<std::string> suites;
  FlowConfig flow;
  bool normalize = true;  // apply the inf R > -1 rescaling first
  SuiteOptions suiteOptions;
};

// Closed-form bound inputs and their values at the final sample time,
// embedded in reports so margins can be audited.
struct ConstantsSnapshot {
  bool valid = false;
  double chi = 0.0;
  double intF0 = 0.0;
  double intRc2_0 = 0.0;
  double vol0 = 0.0;
  double c0AtFinal = 0.0;
  double bAtFinal = 0.0;
  double gradBoundAtFinal = 0.0;
};

struct RunReport {
  std::string scenarioId;
  std::string family;
  std::string termination;  // reached_end | blowup | stiffness
  double finalTime = 0.0;
  double supAbsR = 0.0;
  double scaleApplied = 1.0;
  bool fValid = true;
  ConstantsSnapshot constants;
  std::vector<InequalityResult> results;
  double elapsedMs = 0.0;
  std::string error;  // nonempty when the scenario threw; results then empty
  std::shared_ptr<const Trajectory> trajectory;  // kept for trajectory dumps
};

// Parses a JSON scenario config.  Throws ParseError on malformed text or
// invalid fields, UnknownFamily / UnknownSuite on bad names.
std::vector<Scenario> parse_config(const std::string& text);

// The built-in scenario set used when no config is given: positive, flat,
// negative and mixed curvature families plus two high-curvature runs for
// the sup-rescaled bounds.
std::vector<Scenario> default_bundle();

RunReport run_scenario(const Scenario& scenario);

// Runs scenarios concurrently; reports come back sorted by scenario id and
// per-scenario failures are captured in the report instead of thrown.
std::vector<RunReport> run_scenarios(const std::vector<Scenario>& scenarios);

// JSON document with schemaVersion, per-scenario results and constants.
// deterministic = true drops wall-clock timing fields.
std::string emit_json(const std::vector<RunReport>& reports,
                      bool deterministic);

// One row per InequalityResult: checkId,scenarioId,S,lhs,rhs,margin,status.
std::string emit_csv(const std::vector<RunReport>& reports);

// Per-sample table: t, state labels, minR, maxR, vol, instantaneous and
// accumulated integrals.
std::string trajectory_csv(const Trajectory& traj);

// 0 all PASS, 1 any FAIL or scenario error, 2 any PRECONDITION_UNMET
// without a FAIL.
int exit_code(const std::vector<RunReport>& reports);

}  // namespace ricci
