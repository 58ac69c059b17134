#include "toricj/dual_solver.hpp"
#include "toricj/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace toricj;
using Eigen::VectorXd;

namespace {

const Fan kP1{{{1}, {-1}}};
const Fan kSquare{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

ProblemSpec interval_problem() { return make_problem(KahlerClassPair(kP1, QVector{0, 2}, QVector{0, 1}), QVector{1}); }

ProblemSpec square_problem() {
  return make_problem(KahlerClassPair(kSquare, QVector{0, 0, 2, 1}, QVector{0, 0, 1, 1}), QVector{1, 0});
}

}  // namespace

TEST_CASE("grid classification") {
  const ProblemSpec p = interval_problem();
  const PotentialGrid g(p.pair.beta(), 101, 0.02);
  CHECK(g.dimension() == 1);
  CHECK(g.spacing()[0] == doctest::Approx(0.01));
  // Nodes 2..98 are active; the two outermost are the ring.
  CHECK(g.active_nodes().size() == 97);
  CHECK(g.ring_nodes().size() == 2);
  CHECK(g.interior_nodes().size() == 95);
  for (std::size_t k : g.active_nodes()) CHECK(g.depth(k) >= 0.02 - 1e-12);

  const ProblemSpec s = square_problem();
  const PotentialGrid sq(s.pair.beta(), 11, 0.05);
  CHECK(sq.active_nodes().size() == 81);
  CHECK(sq.ring_nodes().size() == 32);
  CHECK(sq.neighbor(0, -1, 0) == PotentialGrid::npos);
  CHECK(sq.cell_volume() == doctest::Approx(0.01));
}

TEST_CASE("harmonic extension reproduces affine data") {
  const ProblemSpec s = square_problem();
  PotentialGrid g(s.pair.beta(), 17, 0.05);
  const auto affine = [](const VectorXd& y) { return 0.3 + 2 * y[0] - y[1]; };
  g.set_ring(affine);
  harmonic_extension(g);
  for (std::size_t k : g.interior_nodes()) CHECK(g.u[static_cast<Eigen::Index>(k)] == doctest::Approx(affine(g.point(k))));
}

TEST_CASE("interpolated oracle has a second-order residual") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  for (int nodes : {65, 129, 257}) {
    PotentialGrid g(p.pair.beta(), nodes, 0.02);
    g.set_active(smooth_part(oracle));
    const double dy = g.spacing()[0];
    CHECK(residual(p, g).sup <= 5 * dy * dy);
  }
}

TEST_CASE("one flow step and the energy") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  PotentialGrid g(p.pair.beta(), 65, 0.02);
  g.set_ring(smooth_part(oracle));
  harmonic_extension(g);
  const double E0 = energy_E(p, g);
  CHECK(E0 > 0);
  const double dt = explicit_time_step(p, g);
  CHECK(dt > 0);
  const PotentialGrid next = flow_step(p, g, dt, FlowScheme::Explicit);
  CHECK(energy_E(p, next) <= E0 * (1 + 1e-8));
  // The ring is frozen.
  for (std::size_t k : g.ring_nodes())
    CHECK(next.u[static_cast<Eigen::Index>(k)] == g.u[static_cast<Eigen::Index>(k)]);
  const PotentialGrid implicit = flow_step(p, g, 100 * dt, FlowScheme::LinearlyImplicit);
  CHECK(energy_E(p, implicit) < E0);
}

TEST_CASE("flow converges on a coarse interval grid") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  FlowOptions opt;
  opt.tol = 1e-9;
  opt.boundary = smooth_part(oracle);
  const FlowResult r = solve_dual_flow(p, PotentialGrid(p.pair.beta(), 65, 0.02), opt);
  CHECK(r.trace.reason == Termination::Converged);
  REQUIRE_FALSE(r.trace.steps.empty());
  CHECK(r.trace.steps.back().res_sup <= 1e-9);
  for (std::size_t k = 1; k < r.trace.steps.size(); ++k) {
    CHECK(r.trace.steps[k].E <= r.trace.steps[k - 1].E * (1 + 1e-8));
    CHECK(r.trace.steps[k].dJ <= r.trace.steps[k - 1].dJ);
  }
  CHECK(functional_dJ(r.trace) == r.trace.steps.back().dJ);
  CHECK(max_deviation(r.grid, oracle, 0.1) < 5e-4);
}

TEST_CASE("explicit scheme decreases the energy") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  FlowOptions opt;
  opt.scheme = FlowScheme::Explicit;
  opt.max_steps = 50;
  opt.boundary = smooth_part(oracle);
  const FlowResult r = solve_dual_flow(p, PotentialGrid(p.pair.beta(), 33, 0.02), opt);
  REQUIRE(r.trace.steps.size() >= 2);
  CHECK(r.trace.steps.back().E < r.trace.steps.front().E);
}

TEST_CASE("grid potential and the functional I") {
  const ProblemSpec p = interval_problem();
  PotentialGrid g(p.pair.beta(), 65, 0.02);
  g.set_active([](const VectorXd&) { return 0.0; });
  const GridPotential gp(g);
  const VectorXd y = VectorXd::Constant(1, 0.37);
  CHECK(gp.eval(y).value == doctest::Approx(g.canonical().eval(y).value));
  CHECK(compute_I(p, g, g) == doctest::Approx(0).epsilon(1e-14));
}

TEST_CASE("equal classes on the interval solve themselves") {
  // α = β, a_v = 0, c = 1: u = 0 has a residual of order Δy².
  const ProblemSpec p = make_problem(KahlerClassPair(kP1, QVector{0, 1}, QVector{0, 1}), QVector{0});
  CHECK(p.c == 1);
  PotentialGrid g(p.pair.beta(), 129, 0.02);
  g.set_active([](const VectorXd&) { return 0.0; });
  const double dy = g.spacing()[0];
  CHECK(residual(p, g).sup <= 5 * dy * dy);
}

TEST_CASE("a start at the discrete solution needs no steps") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  PotentialGrid g(p.pair.beta(), 65, 0.02);
  g.set_active(smooth_part(oracle));
  FlowOptions opt;
  opt.harmonic_start = false;
  opt.tol = 1.01 * residual(p, g).sup;
  const FlowResult r = solve_dual_flow(p, std::move(g), opt);
  CHECK(r.trace.reason == Termination::Converged);
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps.front().step == 0);
}

TEST_CASE("I is positive and stable under refinement") {
  const ProblemSpec p = interval_problem();
  const TransportSolution oracle = solve_1d_transport(p);
  std::vector<double> values;
  for (int nodes : {129, 257}) {
    PotentialGrid h(p.pair.beta(), nodes, 0.02), can(p.pair.beta(), nodes, 0.02);
    h.set_active(smooth_part(oracle));
    can.set_active([](const VectorXd&) { return 0.0; });
    values.push_back(compute_I(p, h, can));
  }
  CHECK(values[0] > 0);
  CHECK(values[1] == doctest::Approx(values[0]).epsilon(5e-4));
}
