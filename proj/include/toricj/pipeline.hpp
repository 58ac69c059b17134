#pragma once

// The steps behind each command, shared by the command-line tool and the
// acceptance suite: validation, the exact criterion check and the flow solve.

#include "toricj/criterion.hpp"
#include "toricj/dual_solver.hpp"
#include "toricj/oracles.hpp"
#include "toricj/problem_file.hpp"

#include <memory>
#include <optional>

namespace toricj {

struct ValidationOutcome {
  ValidationReport beta, alpha;
  /// Set when both polytopes are valid but differ in combinatorial type.
  std::optional<std::string> fan_mismatch;
  bool valid() const { return beta.valid && alpha.valid && !fan_mismatch; }
};

ValidationOutcome validate_problem(const ProblemFile& file);

/// Throws GeometryError when the offsets do not define a valid pair.
KahlerClassPair make_pair(const ProblemFile& file);

struct CheckOutcome {
  KahlerClassPair pair;
  HamiltonianSpec ham;
  IntersectionConstants constants;
  ThetaExtrema theta;
  Rational c, b;  ///< c from the file (default c_X) and b = b_from_c(c)
  CriterionReport criterion;
};

CheckOutcome run_check(const ProblemFile& file);

/// Exact solution for the problem when one is available (n = 1 with b = 0, or
/// a separable rectangle); otherwise null with the reason in `why`.
std::unique_ptr<ExactSolution> make_oracle(const ProblemSpec& problem, std::string* why = nullptr);

struct EnergySummary {
  double first = 0.0, last = 0.0;
  /// Largest relative step-to-step increase of E (≤ 0 when E never rises).
  double max_relative_increase = 0.0;
  bool E_monotone = true;   ///< within 1e-8 relative slack
  bool dJ_monotone = true;
};

EnergySummary summarize_energy(const FlowTrace& trace);

struct SolveOutcome {
  FlowResult result;
  EnergySummary energy;
  bool has_oracle = false;
  std::string oracle_note;
  /// max |h − h_oracle| on {ℓ_i ≥ deep_margin}, when an oracle exists.
  std::optional<double> deep_error;
};

/// Runs the flow on a fresh grid. Oracle boundary data requires an oracle and
/// throws std::invalid_argument otherwise.
SolveOutcome run_solve(const ProblemSpec& problem, const SolverSettings& settings);

}  // namespace toricj
