#include "toricj/legendre.hpp"
#include "toricj/oracles.hpp"
#include "toricj/potentials.hpp"
#include "toricj/problem.hpp"

#include <doctest.h>

#include <cmath>

using namespace toricj;
using Eigen::VectorXd;

namespace {

const Fan kP1{{{1}, {-1}}};
const Fan kSquare{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("Guillemin potential of the interval") {
  const DelzantPolytope unit(kP1, QVector{0, 1});
  const PotentialValue v = guillemin_eval(unit, vec({0.5}));
  CHECK(v.value == doctest::Approx(-std::log(2.0) / 2).epsilon(1e-15));
  CHECK(std::abs(v.grad[0]) < 1e-15);
  CHECK(v.hess(0, 0) == doctest::Approx(2).epsilon(1e-15));
  const PotentialValue w = guillemin_eval(unit, vec({0.2}));
  CHECK(w.grad[0] == doctest::Approx(0.5 * std::log(0.25)).epsilon(1e-14));
  CHECK_THROWS_AS(guillemin_eval(unit, vec({0.0})), BoundaryOrExterior);
  CHECK_THROWS_AS(guillemin_eval(unit, vec({1.5})), BoundaryOrExterior);
}

TEST_CASE("Guillemin potential of the square") {
  const DelzantPolytope square(kSquare, QVector{0, 0, 1, 1});
  const PotentialValue v = guillemin_eval(square, vec({0.5, 0.5}));
  CHECK(v.hess(0, 0) == doctest::Approx(2));
  CHECK(v.hess(1, 1) == doctest::Approx(2));
  CHECK(std::abs(v.hess(0, 1)) < 1e-15);

  // Third derivatives against a difference of Hessians.
  const GuilleminPotential g(square);
  const VectorXd y = vec({0.3, 0.6});
  const auto third = g.third(y);
  const double d = 1e-6;
  for (int m = 0; m < 2; ++m) {
    VectorXd e = VectorXd::Zero(2);
    e[m] = d;
    const Eigen::MatrixXd fd = (g.eval(y + e).hess - g.eval(y - e).hess) / (2 * d);
    CHECK((fd - third[static_cast<std::size_t>(m)]).norm() < 1e-6);
  }
}

TEST_CASE("Legendre transform of the interval potential") {
  const DelzantPolytope unit(kP1, QVector{0, 1});
  const GuilleminPotential g(unit);
  const LegendreEvaluator ev(g);
  const LegendreValue at0 = ev.eval(vec({0.0}));
  CHECK(at0.grad[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(at0.value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  for (double x : {-3.0, -0.4, 0.7, 5.0}) {
    const LegendreValue v = ev.eval(vec({x}));
    const double y = 1.0 / (1.0 + std::exp(-2 * x));
    CHECK(v.grad[0] == doctest::Approx(y).epsilon(1e-12));
    CHECK(v.value == doctest::Approx(0.5 * std::log1p(std::exp(2 * x))).epsilon(1e-12));
    CHECK(v.hess(0, 0) == doctest::Approx(2 * y * (1 - y)).epsilon(1e-10));
  }
}

TEST_CASE("Legendre transform of the quadratic reference is itself") {
  const QuadraticPotential quad(2, 10.0);
  const LegendreEvaluator ev(quad);
  const LegendreValue v = ev.eval(vec({1.5, -2.0}));
  CHECK(v.value == doctest::Approx(0.5 * (1.5 * 1.5 + 4.0)));
  CHECK(v.grad[0] == doctest::Approx(1.5));
  CHECK(v.grad[1] == doctest::Approx(-2.0));
  CHECK((v.hess - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  for (const auto& t : ev.hess_derivative(v)) CHECK(t.norm() < 1e-12);
  CHECK_THROWS_AS(ev.eval(vec({20.0, 0.0})), NewtonDiverged);
}

TEST_CASE("square round trip and Hessian inverse") {
  const DelzantPolytope square(kSquare, QVector{0, 0, 1, 1});
  const GuilleminPotential g(square);
  const LegendreEvaluator ev(g);
  const VectorXd y = vec({0.15, 0.8});
  const PotentialValue h = g.eval(y);
  const LegendreValue f = ev.eval(h.grad);
  CHECK((f.grad - y).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((f.hess * h.hess - Eigen::MatrixXd::Identity(2, 2)).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("one-dimensional transport oracle") {
  // P_β = [0,1], P_α = [0,2], A_c = y − ½, c = 2.
  const TransportSolution t(0, 1, 0, 2, 2, 1, q("1/2"));
  CHECK(t.s(0.5) == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(t.s(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(t.u_value(0.5)) < 1e-15);
  // u′ against its quadrature and u″ against a difference of u′.
  const double d = 1e-5;
  CHECK((t.u_value(0.3 + d) - t.u_value(0.3 - d)) / (2 * d) == doctest::Approx(t.du(0.3)).epsilon(1e-7));
  CHECK((t.du(0.7 + d) - t.du(0.7 - d)) / (2 * d) == doctest::Approx(t.d2u(0.7)).epsilon(1e-6));

  CHECK_THROWS_AS(TransportSolution(0, 1, 0, 2, 3, 1, q("1/2")), EndpointMismatch);
  CHECK_THROWS_AS(TransportSolution(0, 1, 0, q("1/4"), q("1/4"), 1, q("1/2")), InfeasibleTransport);
}

TEST_CASE("problem assembly and oracles from a problem") {
  const KahlerClassPair p1(kP1, QVector{0, 2}, QVector{0, 1});
  const ProblemSpec prob = make_problem(p1, QVector{1});
  CHECK(prob.c == 2);
  CHECK(prob.b == 0);
  CHECK(prob.rhs(vec({0.5})) == doctest::Approx(2));
  const TransportSolution t = solve_1d_transport(prob);
  CHECK(t.s(0.5) == doctest::Approx(0.875));

  const KahlerClassPair rect(kSquare, QVector{0, 0, 2, 1}, QVector{0, 0, 1, 1});
  const ProblemSpec prod = make_problem(rect, QVector{1, 0});
  CHECK(prod.c == 3);
  const ProductSolution ps = product_oracle(prod);
  CHECK(ps.factor(0).s(1.0) == doctest::Approx(2));
  CHECK(ps.factor(1).s(1.0) == doctest::Approx(1));
  CHECK(ps.factor(0).s(0.5) == doctest::Approx(0.875));
  // h of the product is the sum of the factors.
  const VectorXd y = vec({0.3, 0.6});
  CHECK(ps.h(y).value == doctest::Approx(ps.factor(0).h(vec({0.3})).value + ps.factor(1).h(vec({0.6})).value));

  const Fan cube{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
  const KahlerClassPair p3(cube, QVector{0, 0, 0, 1, 1, 1}, QVector{0, 0, 0, 1, 1, 1});
  CHECK_THROWS_AS(make_problem(p3, QVector{0, 0, 0}), std::invalid_argument);

  const Fan p2{{{1, 0}, {0, 1}, {-1, -1}}};
  const KahlerClassPair tri(p2, QVector{0, 0, 1}, QVector{0, 0, 1});
  CHECK_THROWS_AS(product_oracle(make_problem(tri, QVector{1, 0})), NotSeparable);
}

TEST_CASE("pure scaling transport") {
  // a_v = 0 and c = L_α/L_β give s(y) = c·y and u″ = 0.
  const TransportSolution t(0, 1, 0, 3, 3, 0, 0);
  for (double y : {0.1, 0.5, 0.9}) {
    CHECK(t.s(y) == doctest::Approx(3 * y));
    CHECK(t.d2u(y) == doctest::Approx(0));
  }
}

TEST_CASE("transport is feasible exactly when c + min A_c > 0") {
  // P_β = [0,1], A_c = slope·(y − ½), P_α = [0, c].
  for (const char* c : {"1/4", "1/2", "3/4", "2"}) {
    const Rational cq = q(c);
    const bool feasible = cq - q("1/2") > 0;
    CAPTURE(c);
    if (feasible)
      CHECK_NOTHROW(TransportSolution(0, 1, 0, cq, cq, 1, q("1/2")));
    else
      CHECK_THROWS_AS(TransportSolution(0, 1, 0, cq, cq, 1, q("1/2")), InfeasibleTransport);
  }
}
