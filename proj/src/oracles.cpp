#include "toricj/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace toricj {

namespace {

struct Interval {
  Rational lo, hi;
};

// Bounds along `axis` of a polytope whose normals are ±e_k.
Interval axis_bounds(const DelzantPolytope& p, int axis) {
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < p.fan().size(); ++i) {
    const auto& u = p.fan().normals[i];
    int nonzero = 0;
    for (long x : u) nonzero += x != 0;
    if (nonzero != 1) throw NotSeparable("facet normal is not a coordinate direction");
    if (u[static_cast<std::size_t>(axis)] == 1) lo = -p.offsets()[i];
    if (u[static_cast<std::size_t>(axis)] == -1) hi = p.offsets()[i];
  }
  if (!lo || !hi) throw NotSeparable("polytope is not a box");
  return {*lo, *hi};
}

}  // namespace

TransportSolution::TransportSolution(const Rational& lo_beta, const Rational& hi_beta, const Rational& lo_alpha,
                                     const Rational& hi_alpha, const Rational& c, const Rational& slope,
                                     const Rational& mean) {
  for (const Rational& end : {lo_beta, hi_beta})
    if (c + slope * end - mean <= 0)
      throw InfeasibleTransport("c + A_c is not positive at y = " + to_string(end));
  // s(hi_β) = lo_α + L_β·(c + A_c(midpoint)).
  const Rational s_end = lo_alpha + (hi_beta - lo_beta) * (c + slope * (lo_beta + hi_beta) / 2 - mean);
  if (s_end != hi_alpha)
    throw EndpointMismatch("transport ends at " + to_string(s_end) + " instead of " + to_string(hi_alpha));
  lo_b_ = to_double(lo_beta);
  hi_b_ = to_double(hi_beta);
  lo_a_ = to_double(lo_alpha);
  hi_a_ = to_double(hi_alpha);
  c_ = to_double(c);
  slope_ = to_double(slope);
  mean_ = to_double(mean);
}

double TransportSolution::m1(double y) const { return c_ + slope_ * 0.5 * (y + lo_b_) - mean_; }
double TransportSolution::m2(double y) const { return c_ + slope_ * 0.5 * (y + hi_b_) - mean_; }

double TransportSolution::s(double y) const { return lo_a_ + (y - lo_b_) * m1(y); }

double TransportSolution::du(double y) const { return 0.5 * (std::log(m1(y)) - std::log(m2(y))); }

double TransportSolution::d2u(double y) const { return 0.25 * slope_ * (1.0 / m1(y) - 1.0 / m2(y)); }

double TransportSolution::u_value(double y) const {
  const double mid = 0.5 * (lo_b_ + hi_b_);
  if (y == mid) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate([this](double t) { return du(t); }, mid, y,
                                                                      5, 1e-15);
}

PotentialValue TransportSolution::u(const Eigen::VectorXd& y) const {
  PotentialValue v;
  v.value = u_value(y[0]);
  v.grad = Eigen::VectorXd::Constant(1, du(y[0]));
  v.hess = Eigen::MatrixXd::Constant(1, 1, d2u(y[0]));
  return v;
}

PotentialValue TransportSolution::h(const Eigen::VectorXd& y) const {
  const double t = y[0];
  if (!(t > lo_b_ && t < hi_b_)) throw BoundaryOrExterior("transport solution evaluated outside the open interval");
  const double l1 = t - lo_b_, l2 = hi_b_ - t;
  PotentialValue v = u(y);
  v.value += 0.5 * (l1 * std::log(l1) + l2 * std::log(l2));
  v.grad[0] += 0.5 * (std::log(l1) - std::log(l2));
  v.hess(0, 0) += 0.5 * (1.0 / l1 + 1.0 / l2);
  return v;
}

TransportSolution solve_1d_transport(const ProblemSpec& problem) {
  if (problem.dimension() != 1) throw std::invalid_argument("transport oracle needs n = 1");
  if (problem.b != 0) throw std::invalid_argument("transport oracle needs b = 0");
  const auto beta = axis_bounds(problem.pair.beta(), 0);
  const auto alpha = axis_bounds(problem.pair.alpha(), 0);
  return TransportSolution(beta.lo, beta.hi, alpha.lo, alpha.hi, problem.c, problem.ham.a_v[0], problem.ham.mean);
}

namespace {

PotentialValue combine(const PotentialValue& a, const PotentialValue& b) {
  PotentialValue v;
  v.value = a.value + b.value;
  v.grad = Eigen::Vector2d(a.grad[0], b.grad[0]);
  v.hess = Eigen::Matrix2d::Zero();
  v.hess(0, 0) = a.hess(0, 0);
  v.hess(1, 1) = b.hess(0, 0);
  return v;
}

}  // namespace

PotentialValue ProductSolution::h(const Eigen::VectorXd& y) const {
  return combine(first_.h(y.segment(0, 1)), second_.h(y.segment(1, 1)));
}

PotentialValue ProductSolution::u(const Eigen::VectorXd& y) const {
  return combine(first_.u(y.segment(0, 1)), second_.u(y.segment(1, 1)));
}

ProductSolution product_oracle(const TransportSolution& first, const TransportSolution& second) {
  return ProductSolution(first, second);
}

ProductSolution product_oracle(const ProblemSpec& problem) {
  if (problem.dimension() != 2) throw NotSeparable("product oracle needs n = 2");
  if (problem.b != 0) throw std::invalid_argument("product oracle needs b = 0");
  if (problem.ham.a_v[1] != 0) throw NotSeparable("a_v touches the second factor");
  const auto b1 = axis_bounds(problem.pair.beta(), 0), b2 = axis_bounds(problem.pair.beta(), 1);
  const auto a1 = axis_bounds(problem.pair.alpha(), 0), a2 = axis_bounds(problem.pair.alpha(), 1);
  const Rational c2 = (a2.hi - a2.lo) / (b2.hi - b2.lo);
  const Rational c1 = problem.c - c2;
  const Rational slope = problem.ham.a_v[0];
  const Rational mean1 = slope * (b1.lo + b1.hi) / 2;
  return ProductSolution(TransportSolution(b1.lo, b1.hi, a1.lo, a1.hi, c1, slope, mean1),
                         TransportSolution(b2.lo, b2.hi, a2.lo, a2.hi, c2, 0, 0));
}

}  // namespace toricj
