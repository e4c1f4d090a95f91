#include "ricci/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>
#include <string>

#include <json.hpp>

namespace ricci {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Flat warp-field keys: phi_const, phi_cos<k>, phi_sin<k>, same for psi_.
void apply_flat_warp_key(FourierSeries& phi, FourierSeries& psi,
                         const std::string& key, double value) {
  FourierSeries* target = nullptr;
  std::string rest;
  if (key.rfind("phi_", 0) == 0) {
    target = &phi;
    rest = key.substr(4);
  } else if (key.rfind("psi_", 0) == 0) {
    target = &psi;
    rest = key.substr(4);
  } else {
    throw ParseError("warped parameter must start with phi_ or psi_: " + key);
  }
  if (rest == "const") {
    target->constant = value;
    return;
  }
  std::vector<double>* coefs = nullptr;
  if (rest.rfind("cos", 0) == 0)
    coefs = &target->cosCoef;
  else if (rest.rfind("sin", 0) == 0)
    coefs = &target->sinCoef;
  else
    throw ParseError("bad warped parameter: " + key);
  int k = 0;
  try {
    k = std::stoi(rest.substr(3));
  } catch (const std::exception&) {
    throw ParseError("bad harmonic index in: " + key);
  }
  if (k < 1 || k > 32) throw ParseError("harmonic index out of range: " + key);
  if (coefs->size() < static_cast<std::size_t>(k))
    coefs->resize(static_cast<std::size_t>(k), 0.0);
  (*coefs)[static_cast<std::size_t>(k - 1)] = value;
}

FourierSeries parse_series(const json& node, const std::string& where) {
  FourierSeries s;
  if (!node.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [k, v] : node.items()) {
    if (k == "const") {
      if (!v.is_number()) throw ParseError(where + ".const must be a number");
      s.constant = v.get<double>();
    } else if (k == "cos" || k == "sin") {
      if (!v.is_array()) throw ParseError(where + "." + k + " must be an array");
      auto& dst = k == "cos" ? s.cosCoef : s.sinCoef;
      for (const auto& c : v) {
        if (!c.is_number())
          throw ParseError(where + "." + k + " entries must be numbers");
        dst.push_back(c.get<double>());
      }
    } else {
      throw ParseError(where + ": unknown key " + k);
    }
  }
  return s;
}

double require_number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError(where + " must be a number");
  return node.get<double>();
}

Scenario parse_scenario(const json& node, std::size_t index) {
  const std::string where = "scenarios[" + std::to_string(index) + "]";
  if (!node.is_object()) throw ParseError(where + " must be an object");
  static const std::set<std::string> known{
      "id",     "family", "params",    "phi",   "psi",
      "gridN",  "tEnd",   "suites",    "flow",  "normalize",
      "scaled", "equalityTolerance"};
  for (const auto& [k, v] : node.items())
    if (!known.count(k)) throw ParseError(where + ": unknown key " + k);

  Scenario s;
  if (!node.contains("id") || !node["id"].is_string())
    throw ParseError(where + " needs a string id");
  s.id = node["id"].get<std::string>();
  if (!node.contains("family") || !node["family"].is_string())
    throw ParseError(where + " needs a string family");
  s.family = node["family"].get<std::string>();
  const CatalogEntry& entry = find_family(s.family);

  if (node.contains("tEnd")) {
    s.tEnd = require_number(node["tEnd"], where + ".tEnd");
    if (!(s.tEnd > 0.0)) throw ParseError(where + ".tEnd must be positive");
  }
  if (node.contains("gridN")) {
    if (!node["gridN"].is_number_integer())
      throw ParseError(where + ".gridN must be an integer");
    s.gridN = node["gridN"].get<int>();
  }
  if (node.contains("normalize")) {
    if (!node["normalize"].is_boolean())
      throw ParseError(where + ".normalize must be a boolean");
    s.normalize = node["normalize"].get<bool>();
  }

  if (node.contains("params")) {
    if (!node["params"].is_object())
      throw ParseError(where + ".params must be an object");
    FourierSeries scratchPhi, scratchPsi;  // key validation only
    for (const auto& [k, v] : node["params"].items()) {
      const double val = require_number(v, where + ".params." + k);
      if (entry.kind == FamilyKind::Warped)
        apply_flat_warp_key(scratchPhi, scratchPsi, k, val);
      s.params[k] = val;
    }
  }
  if (node.contains("phi") || node.contains("psi")) {
    if (entry.kind != FamilyKind::Warped)
      throw ParseError(where + ": phi/psi only apply to the warped family");
    if (node.contains("phi")) s.phi = parse_series(node["phi"], where + ".phi");
    if (node.contains("psi")) s.psi = parse_series(node["psi"], where + ".psi");
    s.hasWarpSpec = true;
  }

  if (node.contains("suites")) {
    if (!node["suites"].is_array())
      throw ParseError(where + ".suites must be an array");
    for (const auto& v : node["suites"]) {
      if (!v.is_string())
        throw ParseError(where + ".suites entries must be strings");
      const std::string name = v.get<std::string>();
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw UnknownSuite("unknown suite: " + name);
      s.suites.push_back(name);
    }
  } else {
    s.suites = suite_names();
  }

  if (node.contains("flow")) {
    const json& f = node["flow"];
    if (!f.is_object()) throw ParseError(where + ".flow must be an object");
    for (const auto& [k, v] : f.items()) {
      if (k == "relTol")
        s.flow.relTol = require_number(v, where + ".flow.relTol");
      else if (k == "absTol")
        s.flow.absTol = require_number(v, where + ".flow.absTol");
      else if (k == "blowupCurvatureCap")
        s.flow.blowupCurvatureCap = require_number(v, where + ".flow.cap");
      else if (k == "warpedStabilityFactor")
        s.flow.warpedStabilityFactor =
            require_number(v, where + ".flow.warpedStabilityFactor");
      else if (k == "reportCount") {
        if (!v.is_number_integer())
          throw ParseError(where + ".flow.reportCount must be an integer");
        s.flow.reportCount = v.get<int>();
      } else {
        throw ParseError(where + ".flow: unknown key " + k);
      }
    }
  }

  if (node.contains("scaled")) {
    const json& sc = node["scaled"];
    if (!sc.is_object()) throw ParseError(where + ".scaled must be an object");
    for (const auto& [k, v] : sc.items()) {
      if (k == "factor")
        s.suiteOptions.scaleFactor = require_number(v, where + ".scaled.factor");
      else if (k == "windowStartFrac")
        s.suiteOptions.windowStartFrac =
            require_number(v, where + ".scaled.windowStartFrac");
      else
        throw ParseError(where + ".scaled: unknown key " + k);
    }
  }
  if (node.contains("equalityTolerance"))
    s.suiteOptions.equalityTolOverride =
        require_number(node["equalityTolerance"], where + ".equalityTolerance");
  return s;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::ReachedEnd:
      return "reached_end";
    case Termination::Blowup:
      return "blowup";
    default:
      return "stiffness";
  }
}

}  // namespace

std::vector<Scenario> parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object() || !root.contains("scenarios") ||
      !root["scenarios"].is_array())
    throw ParseError("config must be an object with a scenarios array");
  std::vector<Scenario> out;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const auto& node : root["scenarios"]) {
    Scenario s = parse_scenario(node, index++);
    if (!ids.insert(s.id).second)
      throw ParseError("duplicate scenario id: " + s.id);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Scenario> default_bundle() {
  std::vector<Scenario> out;
  const std::vector<std::string> fullSet{
      "main",   "posscalar", "differential", "identity",    "basic",
      "scaled", "gradient",  "gaussbonnet",  "maxprinciple"};
  const std::vector<std::string> noPositive{
      "main",     "differential", "identity",    "basic", "scaled",
      "gradient", "gaussbonnet",  "maxprinciple"};
  const std::vector<std::string> highCurvature{
      "main", "posscalar", "identity", "krescale", "gaussbonnet",
      "maxprinciple"};

  Scenario s;
  s.id = "s4-positive";
  s.family = "S4";
  s.params = {{"r2", 100.0}};
  s.suites = fullSet;
  out.push_back(s);

  s = Scenario{};
  s.id = "s2xs2-positive";
  s.family = "S2xS2";
  s.params = {{"a2", 50.0}, {"b2", 50.0}};
  s.suites = fullSet;
  out.push_back(s);

  s = Scenario{};
  s.id = "t4-flat";
  s.family = "T4";
  s.params = {{"a2", 1.0}, {"b2", 1.0}, {"c2", 1.0}, {"d2", 1.0}};
  s.suites = noPositive;
  out.push_back(s);

  s = Scenario{};
  s.id = "nil-negative";
  s.family = "Nil3xS1";
  s.params = {{"a2", 1.0}, {"b2", 1.0}, {"c2", 16.0}, {"L2", 1.0}};
  s.suites = noPositive;  // R(0) < 0 after normalization
  // the anisotropy decays on a 1/6 timescale, so the finite-difference
  // monitors need a much denser report grid than the other scenarios
  s.flow.reportCount = 5001;
  out.push_back(s);

  s = Scenario{};
  s.id = "berger-mixed";
  s.family = "BergerS3xS1";
  s.params = {{"lambda2", 120.0}, {"mu2", 100.0}, {"L2", 100.0}};
  s.suites = fullSet;
  out.push_back(s);

  s = Scenario{};
  s.id = "warped-mixed";
  s.family = "WarpedS1xS3";
  s.phi.constant = 4.0;
  s.psi.constant = 4.0;
  s.psi.sinCoef = {0.2};
  s.hasWarpSpec = true;
  s.suites = fullSet;
  out.push_back(s);

  // High-curvature runs: sup|R| >= 1 so the sup-rescaled bounds apply.
  s = Scenario{};
  s.id = "s4-supnorm";
  s.family = "S4";
  s.params = {{"r2", 2.0}};
  s.tEnd = 0.2;
  s.suites = highCurvature;
  out.push_back(s);

  s = Scenario{};
  s.id = "s2xs2-supnorm";
  s.family = "S2xS2";
  s.params = {{"a2", 1.5}, {"b2", 1.5}};
  s.tEnd = 0.5;
  s.suites = highCurvature;
  out.push_back(s);

  return out;
}

RunReport run_scenario(const Scenario& scenario) {
  RunReport rep;
  rep.scenarioId = scenario.id;
  rep.family = scenario.family;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const CatalogEntry& entry = find_family(scenario.family);
    GeometryState init;
    if (entry.kind == FamilyKind::Warped) {
      FourierSeries phi = scenario.phi;
      FourierSeries psi = scenario.psi;
      if (!scenario.hasWarpSpec) {
        phi = FourierSeries{};
        psi = FourierSeries{};
        for (const auto& [k, v] : entry.defaultParams)
          apply_flat_warp_key(phi, psi, k, v);
      }
      // Flat keys override single coefficients of whichever base applies.
      for (const auto& [k, v] : scenario.params)
        apply_flat_warp_key(phi, psi, k, v);
      init = make_warped_state(entry, phi, psi, scenario.gridN);
    } else {
      init = make_state(entry, scenario.params);
    }
    if (scenario.normalize) {
      NormalizeResult nr = normalize_initial(init);
      init = nr.state;
      rep.scaleApplied = nr.scaleApplied;
    }
    FlowConfig cfg = scenario.flow;
    cfg.tEnd = scenario.tEnd;
    auto traj = std::make_shared<Trajectory>(evolve(entry, init, cfg));
    rep.trajectory = traj;
    rep.termination = termination_name(traj->termination);
    rep.finalTime = traj->finalTime;
    rep.supAbsR = traj->supAbsR();
    rep.fValid = traj->fAccumulatorValid;
    const BoundConstants k = bound_constants(*traj);
    const double T = traj->samples.back().t;
    rep.constants.valid = true;
    rep.constants.chi = k.chi;
    rep.constants.intF0 = k.intF0;
    rep.constants.intRc2_0 = k.intRc2_0;
    rep.constants.vol0 = k.vol0;
    rep.constants.c0AtFinal = k.c0(T);
    rep.constants.bAtFinal = k.b(T);
    rep.constants.gradBoundAtFinal = k.gradBound(T);
    for (const std::string& suite : scenario.suites) {
      auto rs = run_suite(suite, *traj, scenario.suiteOptions);
      rep.results.insert(rep.results.end(), rs.begin(), rs.end());
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.results.clear();
  }
  rep.elapsedMs = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

std::vector<RunReport> run_scenarios(const std::vector<Scenario>& scenarios) {
  std::vector<std::future<RunReport>> futures;
  futures.reserve(scenarios.size());
  for (const Scenario& s : scenarios)
    futures.push_back(
        std::async(std::launch::async, [&s] { return run_scenario(s); }));
  std::vector<RunReport> out;
  out.reserve(scenarios.size());
  for (auto& f : futures) out.push_back(f.get());
  std::sort(out.begin(), out.end(), [](const RunReport& a, const RunReport& b) {
    return a.scenarioId < b.scenarioId;
  });
  return out;
}

std::string emit_json(const std::vector<RunReport>& reports,
                      bool deterministic) {
  ojson doc;
  doc["schemaVersion"] = 1;
  ojson list = ojson::array();
  int pass = 0, fail = 0, unmet = 0, errors = 0;
  for (const RunReport& r : reports) {
    ojson s;
    s["id"] = r.scenarioId;
    s["family"] = r.family;
    if (!r.error.empty()) {
      s["error"] = r.error;
      ++errors;
      list.push_back(std::move(s));
      continue;
    }
    s["termination"] = r.termination;
    s["finalTime"] = r.finalTime;
    s["supAbsR"] = r.supAbsR;
    s["scaleApplied"] = r.scaleApplied;
    s["fValid"] = r.fValid;
    if (r.constants.valid) {
      ojson c;
      c["chi"] = r.constants.chi;
      c["intF0"] = r.constants.intF0;
      c["intRc2_0"] = r.constants.intRc2_0;
      c["vol0"] = r.constants.vol0;
      c["c0AtFinal"] = r.constants.c0AtFinal;
      c["bAtFinal"] = r.constants.bAtFinal;
      c["gradBoundAtFinal"] = r.constants.gradBoundAtFinal;
      s["constants"] = std::move(c);
    }
    ojson results = ojson::array();
    for (const InequalityResult& q : r.results) {
      ojson e;
      e["checkId"] = q.checkId;
      e["evalTime"] = q.evalTime;
      e["lhs"] = q.lhs;
      e["rhs"] = q.rhs;
      e["margin"] = q.margin;
      e["tolerance"] = q.tolerance;
      e["status"] = std::string(to_string(q.status));
      results.push_back(std::move(e));
      switch (q.status) {
        case CheckStatus::Pass:
          ++pass;
          break;
        case CheckStatus::Fail:
          ++fail;
          break;
        default:
          ++unmet;
      }
    }
    s["results"] = std::move(results);
    if (!deterministic) s["elapsedMs"] = r.elapsedMs;
    list.push_back(std::move(s));
  }
  doc["scenarios"] = std::move(list);
  ojson summary;
  summary["pass"] = pass;
  summary["fail"] = fail;
  summary["preconditionUnmet"] = unmet;
  summary["errors"] = errors;
  summary["exitCode"] = exit_code(reports);
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

std::string emit_csv(const std::vector<RunReport>& reports) {
  std::string out = "checkId,scenarioId,S,lhs,rhs,margin,status\n";
  for (const RunReport& r : reports) {
    for (const InequalityResult& q : r.results) {
      out += q.checkId;
      out += ',';
      out += r.scenarioId;
      out += ',';
      out += fmt(q.evalTime);
      out += ',';
      out += fmt(q.lhs);
      out += ',';
      out += fmt(q.rhs);
      out += ',';
      out += fmt(q.margin);
      out += ',';
      out += to_string(q.status);
      out += '\n';
    }
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  if (traj.entry == nullptr) throw DomainError("trajectory has no family");
  const auto& labels = traj.entry->stateLabels;
  std::string out = "t";
  for (const auto& l : labels) out += "," + l;
  out +=
      ",minR,maxR,vol,intRc2,intRm2,intF,accR2,accF2,accRc4,accRm2,accGrad,"
      "accVol\n";
  const bool warped = traj.entry->kind == FamilyKind::Warped;
  for (const TrajectorySample& s : traj.samples) {
    out += fmt(s.t);
    if (warped) {
      const int n = s.state.gridN();
      double phiMin = s.state.params[0], phiMax = phiMin;
      double psiMin = s.state.params[static_cast<std::size_t>(n)],
             psiMax = psiMin;
      for (int j = 0; j < n; ++j) {
        const double p = s.state.params[static_cast<std::size_t>(j)];
        const double q = s.state.params[static_cast<std::size_t>(n + j)];
        phiMin = std::min(phiMin, p);
        phiMax = std::max(phiMax, p);
        psiMin = std::min(psiMin, q);
        psiMax = std::max(psiMax, q);
      }
      for (double v : {phiMin, phiMax, psiMin, psiMax}) out += "," + fmt(v);
    } else {
      for (double v : s.state.params) out += "," + fmt(v);
    }
    for (double v :
         {s.inst.minR, s.inst.maxR, s.inst.vol, s.inst.rc2, s.inst.rm2,
          s.inst.f, s.acc.r2, s.acc.f2, s.acc.rc4, s.acc.rm2, s.acc.grad,
          s.acc.vol})
      out += "," + fmt(v);
    out += '\n';
  }
  return out;
}

int exit_code(const std::vector<RunReport>& reports) {
  bool anyFail = false, anyUnmet = false;
  for (const RunReport& r : reports) {
    if (!r.error.empty()) anyFail = true;
    for (const InequalityResult& q : r.results) {
      if (q.status == CheckStatus::Fail) anyFail = true;
      if (q.status == CheckStatus::PreconditionUnmet) anyUnmet = true;
    }
  }
  if (anyFail) return 1;
  if (anyUnmet) return 2;
  return 0;
}

}  // namespace ricci
