#include "toricj/pipeline.hpp"

#include <algorithm>

namespace toricj {

ValidationOutcome validate_problem(const ProblemFile& file) {
  ValidationOutcome out{validate_delzant(file.fan, file.offsets_beta), validate_delzant(file.fan, file.offsets_alpha),
                        std::nullopt};
  if (out.beta.valid && out.alpha.valid) {
    const DelzantPolytope beta(file.fan, file.offsets_beta), alpha(file.fan, file.offsets_alpha);
    if (beta.combinatorial_type() != alpha.combinatorial_type())
      out.fan_mismatch = "the two polytopes have different combinatorial types";
  }
  return out;
}

KahlerClassPair make_pair(const ProblemFile& file) {
  return KahlerClassPair(file.fan, file.offsets_alpha, file.offsets_beta);
}

CheckOutcome run_check(const ProblemFile& file) {
  KahlerClassPair pair = make_pair(file);
  HamiltonianSpec ham = hamiltonian_spec(file.a_v, pair);
  IntersectionConstants constants = intersection_constants(pair);
  ThetaExtrema theta = theta_extrema(ham, pair);
  const Rational c = file.c ? *file.c : constants.c_X;
  const Rational b = b_from_c(pair, c);
  CriterionReport criterion = check(pair, ham);
  return CheckOutcome{std::move(pair), std::move(ham), std::move(constants), std::move(theta), c, b,
                      std::move(criterion)};
}

std::unique_ptr<ExactSolution> make_oracle(const ProblemSpec& problem, std::string* why) {
  try {
    if (problem.dimension() == 1) return std::make_unique<TransportSolution>(solve_1d_transport(problem));
    return std::make_unique<ProductSolution>(product_oracle(problem));
  } catch (const std::exception& e) {
    if (why) *why = e.what();
    return nullptr;
  }
}

EnergySummary summarize_energy(const FlowTrace& trace) {
  EnergySummary s;
  if (trace.steps.empty()) return s;
  s.first = trace.steps.front().E;
  s.last = trace.steps.back().E;
  s.max_relative_increase = -1.0;
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    const double prev = trace.steps[k - 1].E, cur = trace.steps[k].E;
    const double rel = prev > 0.0 ? (cur - prev) / prev : (cur > 0.0 ? 1.0 : 0.0);
    s.max_relative_increase = std::max(s.max_relative_increase, rel);
    if (cur > prev * (1.0 + 1e-8)) s.E_monotone = false;
    if (trace.steps[k].dJ > trace.steps[k - 1].dJ) s.dJ_monotone = false;
  }
  if (trace.steps.size() == 1) s.max_relative_increase = 0.0;
  return s;
}

SolveOutcome run_solve(const ProblemSpec& problem, const SolverSettings& settings) {
  std::string why;
  std::unique_ptr<ExactSolution> oracle = make_oracle(problem, &why);
  if (settings.boundary == BoundaryData::Oracle && !oracle)
    throw std::invalid_argument("oracle boundary data requested but no exact solution is available: " + why);

  FlowOptions options;
  options.tol = settings.tol;
  options.max_steps = settings.max_steps;
  options.scheme = settings.scheme;
  if (settings.boundary == BoundaryData::Oracle)
    options.boundary = smooth_part(*oracle);
  else
    options.boundary = [](const Eigen::VectorXd&) { return 0.0; };

  PotentialGrid grid(problem.pair.beta(), settings.grid, to_double(settings.margin));
  SolveOutcome out{solve_dual_flow(problem, std::move(grid), options), {}, oracle != nullptr, why, std::nullopt};
  out.energy = summarize_energy(out.result.trace);
  if (oracle) out.deep_error = max_deviation(out.result.grid, *oracle, to_double(settings.deep_margin));
  return out;
}

}  // namespace toricj
