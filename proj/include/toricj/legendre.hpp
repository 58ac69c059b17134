#pragma once

// Numerical Legendre transform f(x) = sup_y (<x,y> − h(y)) of a smooth strictly
// convex potential h, by damped Newton on ∇h(y) = x.

#include "toricj/potentials.hpp"

#include <stdexcept>

namespace toricj {

class NewtonDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LegendreValue {
  double value = 0.0;     ///< f(x)
  Eigen::VectorXd grad;   ///< ∇f(x) = y*
  Eigen::MatrixXd hess;   ///< D²f(x) = (D²h(y*))⁻¹
  int iterations = 0;
};

class LegendreEvaluator {
 public:
  /// Converged when |∇h(y) − x|_∞ ≤ tol·max(1, |x|_∞).
  explicit LegendreEvaluator(const ConvexPotential& reference, double tol = 1e-12, int max_iterations = 50);

  /// `warm_start`, when given and inside the domain, replaces the default
  /// starting point. Throws NewtonDiverged.
  LegendreValue eval(const Eigen::VectorXd& x, const Eigen::VectorXd* warm_start = nullptr) const;

  /// ∂_k D²f(x) = −D²f (Σ_m ∂_m D²h(y*) ∂_k y*_m) D²f, for k = 0..n-1.
  std::vector<Eigen::MatrixXd> hess_derivative(const LegendreValue& v) const;

  const ConvexPotential& reference() const { return ref_; }
  double tolerance() const { return tol_; }

 private:
  const ConvexPotential& ref_;
  double tol_;
  int max_iterations_;
};

LegendreValue legendre_eval(const LegendreEvaluator& ev, const Eigen::VectorXd& x);

}  // namespace toricj
