// Command-line front end: validate | check | solve | lab.
//
// Exit codes: 0 success, 1 parse error, 2 invalid input, 3 criterion FAIL or
// refusal to solve, 4 no convergence, 5 convexity lost, 6 counterexample found.

#include "toricj/pipeline.hpp"
#include "toricj/problem.hpp"
#include "toricj/property_lab.hpp"
#include "toricj/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace toricj;

namespace {

enum Exit { kOk = 0, kParse = 1, kInvalid = 2, kFail = 3, kNoConvergence = 4, kConvexityLost = 5, kCounterexample = 6 };

struct Outputs {
  fs::path dir;
  bool enabled() const { return !dir.empty(); }

  void write(const std::string& name, const std::string& content) const {
    if (!enabled()) return;
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  }
};

Outputs outputs_for(const std::string& flag, const ProblemFile* file) {
  if (!flag.empty()) return {flag};
  if (file && !file->output_dir.empty()) return {file->output_dir};
  return {};
}

int cmd_validate(const std::string& path, const std::string& out_flag) {
  const ProblemFile file = parse_problem_file(path);
  const ValidationOutcome v = validate_problem(file);
  const std::string text = validation_text(file, v);
  std::cout << text;
  const Outputs out = outputs_for(out_flag, &file);
  out.write("report.txt", text);
  out.write("report.json", validation_json(file, v));
  return v.valid() ? kOk : kInvalid;
}

/// Validates first so that geometric problems surface with their witness.
bool ensure_valid(const ProblemFile& file) {
  const ValidationOutcome v = validate_problem(file);
  if (v.valid()) return true;
  std::cout << validation_text(file, v);
  return false;
}

int cmd_check(const std::string& path, const std::string& out_flag) {
  const ProblemFile file = parse_problem_file(path);
  if (!ensure_valid(file)) return kInvalid;
  const CheckOutcome c = run_check(file);
  const std::string text = check_text(file, c);
  std::cout << text;
  const Outputs out = outputs_for(out_flag, &file);
  out.write("report.txt", text);
  out.write("report.json", check_json(file, c));
  return c.criterion.pass ? kOk : kFail;
}

struct SolveFlags {
  bool force = false;
  int grid = 0;
  std::string margin, scheme, boundary;
  double tol = 0.0;
  int max_steps = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int cmd_solve(const std::string& path, const SolveFlags& flags, const std::string& out_flag) {
  const ProblemFile file = parse_problem_file(path);
  SolverSettings settings = file.solver;
  if (flags.grid) settings.grid = flags.grid;
  if (!flags.margin.empty()) {
    try {
      settings.margin = parse_rational(flags.margin);
    } catch (const std::invalid_argument& e) {
      throw ParseError("--margin", 0, 0, e.what());
    }
    if (settings.margin <= 0) {
      std::cerr << "error: --margin must be positive\n";
      return kInvalid;
    }
  }
  if (flags.tol > 0.0) settings.tol = flags.tol;
  if (flags.max_steps >= 0) settings.max_steps = flags.max_steps;
  if (flags.seed_set) settings.seed = flags.seed;
  if (flags.scheme == "explicit") settings.scheme = FlowScheme::Explicit;
  if (flags.scheme == "implicit") settings.scheme = FlowScheme::LinearlyImplicit;
  if (flags.boundary == "oracle") settings.boundary = BoundaryData::Oracle;
  if (flags.boundary == "zero") settings.boundary = BoundaryData::Zero;

  if (!ensure_valid(file)) return kInvalid;
  const CheckOutcome c = run_check(file);
  const Outputs out = outputs_for(out_flag, &file);
  if (!c.criterion.pass && !flags.force) {
    const std::string text = check_text(file, c);
    std::cout << text << "Refusing to solve: the solvability criterion fails (use --force to override).\n";
    out.write("report.txt", text);
    out.write("report.json", check_json(file, c));
    return kFail;
  }
  if (c.pair.dimension() > 2) {
    std::cerr << "error: the flow solver supports dimensions 1 and 2 only\n";
    return kInvalid;
  }
  const ProblemSpec problem = make_problem(c.pair, file.a_v, file.c);
  const SolveOutcome s = run_solve(problem, settings);

  const std::string text = solve_text(file, c, settings, s);
  std::cout << text;
  out.write("report.txt", text);
  out.write("report.json", solve_json(file, c, settings, s));
  if (out.enabled()) {
    std::ostringstream trace, grid;
    write_trace_csv(trace, s.result.trace);
    write_grid_csv(grid, problem, s.result.grid);
    out.write("trace.csv", trace.str());
    out.write("grid.csv", grid.str());
  }
  switch (s.result.trace.reason) {
    case Termination::Converged: return kOk;
    case Termination::ConvexityLost: return kConvexityLost;
    case Termination::MaxSteps:
    case Termination::StepRejected: return kNoConvergence;
  }
  return kNoConvergence;
}

struct LabFlags {
  std::uint64_t seed = 42;
  long samples = 10000;
  double K = 0.0, C_theta = 1.0;
  int n = 0;
};

int cmd_lab(const std::string& suite, const LabFlags& flags, const std::string& out_flag) {
  lab::SuiteReport r;
  if (suite == "thresholds" && (flags.K > 0.0 || flags.n > 0)) {
    const lab::ThresholdQuery q{flags.K > 0.0 ? flags.K : 1.0, flags.n > 0 ? flags.n : 2, flags.C_theta};
    r = lab::run_thresholds(flags.seed, flags.samples, {q});
  } else {
    r = lab::run_suite(suite, flags.seed, flags.samples);
  }
  const std::string text = lab_text(r);
  std::cout << text;
  const Outputs out = outputs_for(out_flag, nullptr);
  out.write("report.txt", text);
  out.write("report.json", lab_json(r));
  return r.passed() ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvability checks and dual-flow solves for the modified J-equation on toric manifolds"};
  app.require_subcommand(1);
  std::string path, out_flag;

  auto* validate = app.add_subcommand("validate", "Validate the polytopes of a problem file");
  validate->add_option("problem", path, "Problem file")->required();
  validate->add_option("--out", out_flag, "Directory for report.txt and report.json");

  auto* check = app.add_subcommand("check", "Decide solvability exactly and write a report");
  check->add_option("problem", path, "Problem file")->required();
  check->add_option("--out", out_flag, "Directory for report.txt and report.json");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Run the dual flow on a grid (n = 1 or 2)");
  solve->add_option("problem", path, "Problem file")->required();
  solve->add_flag("--force", sf.force, "Solve even when the criterion fails");
  solve->add_option("--grid", sf.grid, "Nodes per axis")->check(CLI::Range(5, 100000));
  solve->add_option("--margin", sf.margin, "Active-region margin, a rational such as 1/50");
  solve->add_option("--tol", sf.tol, "Target sup residual")->check(CLI::PositiveNumber);
  solve->add_option("--max-steps", sf.max_steps, "Step limit")->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", sf.seed, "Seed (recorded in the report)")->each([&](const std::string&) {
    sf.seed_set = true;
  });
  solve->add_option("--scheme", sf.scheme, "implicit or explicit")->check(CLI::IsMember({"implicit", "explicit"}));
  solve->add_option("--boundary", sf.boundary, "oracle or zero")->check(CLI::IsMember({"oracle", "zero"}));
  solve->add_option("--out", out_flag, "Directory for reports, trace.csv and grid.csv");

  LabFlags lf;
  std::string suite;
  auto* labcmd = app.add_subcommand("lab", "Run a seeded property suite");
  labcmd->add_option("suite", suite, "convexity, thresholds, regmax or legendre")->required();
  labcmd->add_option("--seed", lf.seed, "Seed of the sample streams");
  labcmd->add_option("--samples", lf.samples, "Number of samples")->check(CLI::Range(1L, 100000000L));
  labcmd->add_option("--K", lf.K, "thresholds: cap K")->check(CLI::PositiveNumber);
  labcmd->add_option("--n", lf.n, "thresholds: dimension")->check(CLI::Range(1, 64));
  labcmd->add_option("--c-theta", lf.C_theta, "thresholds: C_theta")->check(CLI::NonNegativeNumber);
  labcmd->add_option("--out", out_flag, "Directory for report.txt and report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*validate) return cmd_validate(path, out_flag);
    if (*check) return cmd_check(path, out_flag);
    if (*solve) return cmd_solve(path, sf, out_flag);
    if (*labcmd) return cmd_lab(suite, lf, out_flag);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const lab::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const GeometryError& e) {
    std::cerr << "invalid input (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
