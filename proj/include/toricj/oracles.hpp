#pragma once

// Exact solutions used to validate the solver: the n = 1 moment transport and
// separable products of two of them on a rectangle.

#include "toricj/potentials.hpp"
#include "toricj/problem.hpp"

#include <stdexcept>

namespace toricj {

class InfeasibleTransport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EndpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSeparable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact solution h together with its smooth part u = h − h_can, where h_can
/// is the Guillemin potential of P_β.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;
  virtual int dimension() const = 0;
  virtual PotentialValue h(const Eigen::VectorXd& y) const = 0;
  virtual PotentialValue u(const Eigen::VectorXd& y) const = 0;
};

/// P_β = [lo_β, hi_β] is carried onto P_α = [lo_α, hi_α] by
///   s(y) = lo_α + ∫_{lo_β}^y (c + A_c),   h′(y) = g_α′(s(y)),
/// where g_α is the Guillemin potential of P_α. The smooth part has
///   u′(y) = ½ log m₁(y) − ½ log m₂(y),  m₁ = (s − lo_α)/(y − lo_β),  m₂ = (hi_α − s)/(hi_β − y),
/// both averages of c + A_c; u is anchored to vanish at the midpoint of P_β.
class TransportSolution : public ExactSolution {
 public:
  /// A_c(y) = slope·y − mean. Throws InfeasibleTransport when c + A_c ≤ 0 on
  /// P_β and EndpointMismatch when s(hi_β) ≠ hi_α; both checks are exact.
  TransportSolution(const Rational& lo_beta, const Rational& hi_beta, const Rational& lo_alpha,
                    const Rational& hi_alpha, const Rational& c, const Rational& slope, const Rational& mean);

  int dimension() const override { return 1; }
  PotentialValue h(const Eigen::VectorXd& y) const override;
  PotentialValue u(const Eigen::VectorXd& y) const override;

  double s(double y) const;
  double du(double y) const;
  double d2u(double y) const;
  /// u by Gauss–Kronrod quadrature of u′ from the midpoint.
  double u_value(double y) const;

 private:
  double m1(double y) const;
  double m2(double y) const;
  double lo_b_, hi_b_, lo_a_, hi_a_, c_, slope_, mean_;
};

TransportSolution solve_1d_transport(const ProblemSpec& problem);

class ProductSolution : public ExactSolution {
 public:
  ProductSolution(TransportSolution first, TransportSolution second)
      : first_(std::move(first)), second_(std::move(second)) {}
  int dimension() const override { return 2; }
  PotentialValue h(const Eigen::VectorXd& y) const override;
  PotentialValue u(const Eigen::VectorXd& y) const override;
  const TransportSolution& factor(int k) const { return k == 0 ? first_ : second_; }

 private:
  TransportSolution first_, second_;
};

ProductSolution product_oracle(const TransportSolution& first, const TransportSolution& second);

/// Splits a problem on a rectangle (normals ±e₁, ±e₂) with a_v = (a, 0) into
/// c₂ = L_α₂/L_β₂, c₁ = c − c₂. Throws NotSeparable otherwise.
ProductSolution product_oracle(const ProblemSpec& problem);

}  // namespace toricj
