#include "toricj/legendre.hpp"

#include <cmath>
#include <sstream>

namespace toricj {

LegendreEvaluator::LegendreEvaluator(const ConvexPotential& reference, double tol, int max_iterations)
    : ref_(reference), tol_(tol), max_iterations_(max_iterations) {}

LegendreValue LegendreEvaluator::eval(const Eigen::VectorXd& x, const Eigen::VectorXd* warm_start) const {
  if (x.size() != ref_.dimension()) throw std::invalid_argument("Legendre argument has the wrong dimension");
  if (!x.allFinite()) throw NewtonDiverged("Legendre argument is not finite");
  Eigen::VectorXd y = (warm_start && ref_.in_domain(*warm_start)) ? *warm_start : ref_.interior_point();
  const double target = tol_ * std::max(1.0, x.lpNorm<Eigen::Infinity>());

  PotentialValue pv = ref_.eval(y);
  Eigen::VectorXd r = pv.grad - x;
  double rnorm = r.lpNorm<Eigen::Infinity>();
  double obj = pv.value - x.dot(y);
  for (int it = 0; it <= max_iterations_; ++it) {
    if (rnorm <= target) {
      LegendreValue out;
      out.grad = y;
      out.value = x.dot(y) - pv.value;
      out.hess = pv.hess.inverse();
      out.iterations = it;
      return out;
    }
    if (it == max_iterations_) break;
    const Eigen::VectorXd step = -pv.hess.ldlt().solve(r);
    const double slope = r.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Eigen::VectorXd trial = y + t * step;
      if (!ref_.in_domain(trial)) continue;
      PotentialValue tv = ref_.eval(trial);
      const Eigen::VectorXd tr = tv.grad - x;
      const double tnorm = tr.lpNorm<Eigen::Infinity>();
      const double tobj = tv.value - x.dot(trial);
      // Armijo on the convex objective, or plain residual decrease once the
      // objective change drowns in rounding.
      if (tobj <= obj + 1e-4 * t * slope || tnorm < rnorm) {
        y = trial;
        pv = std::move(tv);
        r = tr;
        rnorm = tnorm;
        obj = tobj;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  std::ostringstream msg;
  msg << "Newton inversion of the gradient failed at x = (" << x.transpose() << "), residual " << rnorm;
  throw NewtonDiverged(msg.str());
}

std::vector<Eigen::MatrixXd> LegendreEvaluator::hess_derivative(const LegendreValue& v) const {
  const auto t = ref_.third(v.grad);
  const int n = static_cast<int>(v.hess.rows());
  std::vector<Eigen::MatrixXd> out;
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m) s += t[static_cast<std::size_t>(m)] * v.hess(m, k);
    out.push_back(-v.hess * s * v.hess);
  }
  return out;
}

LegendreValue legendre_eval(const LegendreEvaluator& ev, const Eigen::VectorXd& x) { return ev.eval(x); }

}  // namespace toricj
