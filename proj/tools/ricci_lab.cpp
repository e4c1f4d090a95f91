// Command-line front end: list the geometry catalog, run scenario bundles,
// or evaluate one check suite on one family.
//
// Exit codes: 0 all PASS, 1 any FAIL or scenario error, 2 any
// PRECONDITION_UNMET without a FAIL, 3 usage or configuration error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ricci/report.hpp"

namespace {

namespace fs = std::filesystem;

// Relative output paths land under RICCI_LAB_OUT_DIR when it is set.
fs::path resolve_out(const std::string& raw) {
  fs::path p(raw);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("RICCI_LAB_OUT_DIR"))
    if (*dir != '\0') return fs::path(dir) / p;
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ricci::IoError("cannot open " + path.string());
  out << text;
  if (!out) throw ricci::IoError("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ricci::IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kind_name(ricci::FamilyKind k) {
  switch (k) {
    case ricci::FamilyKind::Homogeneous:
      return "homogeneous";
    case ricci::FamilyKind::Product:
      return "product";
    default:
      return "warped";
  }
}

int cmd_catalog() {
  for (const ricci::CatalogEntry& e : ricci::catalog()) {
    std::printf("%-14s %-12s chi=%-3d", e.name.c_str(), kind_name(e.kind),
                e.chi);
    std::string params;
    for (const auto& [k, v] : e.defaultParams) {
      if (!params.empty()) params += ' ';
      params += k + '=' + std::to_string(v);
    }
    std::printf(" defaults: %s\n", params.c_str());
  }
  return 0;
}

// "key=value" -> pair; throws ParseError on anything else.
std::pair<std::string, double> split_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ricci::ParseError("expected key=value, got: " + text);
  const std::string key = text.substr(0, eq);
  try {
    std::size_t used = 0;
    const double v = std::stod(text.substr(eq + 1), &used);
    if (used != text.size() - eq - 1)
      throw ricci::ParseError("bad numeric value in: " + text);
    return {key, v};
  } catch (const ricci::ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ricci::ParseError("bad numeric value in: " + text);
  }
}

// Appends the scenario id before the extension so each trajectory gets its
// own file: traj.csv -> traj.s4-positive.csv.
fs::path per_scenario_path(const fs::path& base, const std::string& id) {
  fs::path out = base.parent_path();
  out /= base.stem().string() + "." + id + base.extension().string();
  return out;
}

int run_and_report(const std::vector<ricci::Scenario>& scenarios,
                   const std::string& format, const std::string& outPath,
                   const std::string& trajPath, bool deterministic) {
  const std::vector<ricci::RunReport> reports = ricci::run_scenarios(scenarios);
  const std::string body = format == "csv" ? ricci::emit_csv(reports)
                                           : ricci::emit_json(reports,
                                                              deterministic);
  if (outPath.empty())
    std::fputs(body.c_str(), stdout);
  else
    write_file(resolve_out(outPath), body);

  if (!trajPath.empty()) {
    const fs::path base = resolve_out(trajPath);
    for (const ricci::RunReport& r : reports) {
      if (!r.trajectory) continue;
      const fs::path p = reports.size() == 1
                             ? base
                             : per_scenario_path(base, r.scenarioId);
      write_file(p, ricci::trajectory_csv(*r.trajectory));
    }
  }

  for (const ricci::RunReport& r : reports)
    if (!r.error.empty())
      std::fprintf(stderr, "scenario %s failed: %s\n", r.scenarioId.c_str(),
                   r.error.c_str());
  return ricci::exit_code(reports);
}

int cmd_check(const std::string& family, const std::string& suite,
              const std::vector<std::string>& rawParams, double tEnd,
              int gridN, bool noNormalize) {
  ricci::Scenario s;
  s.id = "check";
  s.family = family;
  s.tEnd = tEnd;
  s.gridN = gridN;
  s.normalize = !noNormalize;
  s.suites = {suite};
  const auto& names = ricci::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ricci::UnknownSuite("unknown suite: " + suite);
  ricci::find_family(family);
  for (const std::string& raw : rawParams) s.params.insert(split_param(raw));

  const ricci::RunReport rep = ricci::run_scenario(s);
  if (!rep.error.empty()) {
    std::fprintf(stderr, "error: %s\n", rep.error.c_str());
    return 1;
  }
  std::printf("family=%s termination=%s finalTime=%.6g supAbsR=%.6g\n",
              family.c_str(), rep.termination.c_str(), rep.finalTime,
              rep.supAbsR);
  for (const ricci::InequalityResult& q : rep.results)
    std::printf("%-28s S=%-10.6g lhs=%-14.8g rhs=%-14.8g margin=%-12.5g %s\n",
                q.checkId.c_str(), q.evalTime, q.lhs, q.rhs, q.margin,
                std::string(ricci::to_string(q.status)).c_str());
  return ricci::exit_code({rep});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral curvature estimate lab for Ricci flow families"};
  app.require_subcommand(1);

  CLI::App* catalogCmd = app.add_subcommand("catalog", "list families");

  CLI::App* runCmd = app.add_subcommand("run", "run a scenario bundle");
  std::string configPath, format = "json", outPath, trajPath;
  bool deterministic = false;
  runCmd->add_option("--config", configPath,
                     "scenario JSON (omit for the built-in bundle)");
  runCmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  runCmd->add_option("--out", outPath, "report path (default stdout)");
  runCmd->add_option("--traj-out", trajPath, "trajectory CSV path");
  runCmd->add_flag("--deterministic", deterministic,
                   "omit wall-clock fields for byte-stable output");

  CLI::App* checkCmd =
      app.add_subcommand("check", "evaluate one suite on one family");
  std::string family, suite;
  std::vector<std::string> rawParams;
  double tEnd = 1.0;
  int gridN = 0;
  bool noNormalize = false;
  checkCmd->add_option("--family", family, "catalog family name")->required();
  checkCmd->add_option("--suite", suite, "check suite name")->required();
  checkCmd->add_option("--param", rawParams, "initial parameter key=value");
  checkCmd->add_option("--tend", tEnd, "flow horizon");
  checkCmd->add_option("--grid-n", gridN, "warped grid size (0 = default)");
  checkCmd->add_flag("--no-normalize", noNormalize,
                     "skip the inf R > -1 rescaling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (catalogCmd->parsed()) return cmd_catalog();
    if (runCmd->parsed()) {
      std::vector<ricci::Scenario> scenarios =
          configPath.empty() ? ricci::default_bundle()
                             : ricci::parse_config(read_file(configPath));
      return run_and_report(scenarios, format, outPath, trajPath,
                            deterministic);
    }
    return cmd_check(family, suite, rawParams, tEnd, gridN, noNormalize);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
