#pragma once

// The dual equation on P_β:
//   f_ij(∇h) h_ij + b·det D²f(∇h)·det D²h = c + A_c(y),
// with f the Legendre dual of the Guillemin potential of P_α.

#include "toricj/classes.hpp"

#include <Eigen/Dense>

#include <optional>

namespace toricj {

struct ProblemSpec {
  KahlerClassPair pair;
  HamiltonianSpec ham;
  Rational c, b;

  // Double-precision views used by the solver.
  double c_value = 0.0, b_value = 0.0, mean_value = 0.0;
  Eigen::VectorXd a_v;

  int dimension() const { return pair.dimension(); }
  /// c + A_c(y).
  double rhs(const Eigen::VectorXd& y) const { return c_value + a_v.dot(y) - mean_value; }
};

/// c defaults to c_X; b = b_from_c(pair, c). Throws std::invalid_argument
/// unless n ∈ {1, 2}.
ProblemSpec make_problem(const KahlerClassPair& pair, const QVector& a_v, const std::optional<Rational>& c = {});

}  // namespace toricj
