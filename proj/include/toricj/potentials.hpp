#pragma once

// Smooth strictly convex potentials on open polytopes, evaluated in double
// precision: the Guillemin potential h = ½ Σ ℓ_i log ℓ_i and a quadratic
// reference used to test the Legendre machinery.

#include "toricj/toric_core.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace toricj {

/// Evaluation at a point on the boundary of, or outside, the domain.
class BoundaryOrExterior : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PotentialValue {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

class ConvexPotential {
 public:
  virtual ~ConvexPotential() = default;
  virtual int dimension() const = 0;
  virtual bool in_domain(const Eigen::VectorXd& y) const = 0;
  /// A point from which Newton iterations may start.
  virtual Eigen::VectorXd interior_point() const = 0;
  virtual PotentialValue eval(const Eigen::VectorXd& y) const = 0;
  /// ∂_m D²h for m = 0..n-1. The default throws std::logic_error.
  virtual std::vector<Eigen::MatrixXd> third(const Eigen::VectorXd& y) const;
};

class GuilleminPotential : public ConvexPotential {
 public:
  explicit GuilleminPotential(const DelzantPolytope& polytope);

  int dimension() const override { return static_cast<int>(normals_.cols()); }
  bool in_domain(const Eigen::VectorXd& y) const override;
  Eigen::VectorXd interior_point() const override { return center_; }
  PotentialValue eval(const Eigen::VectorXd& y) const override;
  std::vector<Eigen::MatrixXd> third(const Eigen::VectorXd& y) const override;

  /// ℓ_i(y) = <u_i, y> + λ_i for every facet.
  Eigen::VectorXd facet_values(const Eigen::VectorXd& y) const;
  const Eigen::MatrixXd& normals() const { return normals_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }

 private:
  Eigen::MatrixXd normals_;  ///< m × n
  Eigen::VectorXd offsets_;
  Eigen::VectorXd center_;
};

/// (value, gradient, Hessian) of the Guillemin potential of P at y.
PotentialValue guillemin_eval(const DelzantPolytope& polytope, const Eigen::VectorXd& y);

/// ½|y|² on the open box |y_i| < radius.
class QuadraticPotential : public ConvexPotential {
 public:
  QuadraticPotential(int n, double radius) : n_(n), radius_(radius) {}
  int dimension() const override { return n_; }
  bool in_domain(const Eigen::VectorXd& y) const override;
  Eigen::VectorXd interior_point() const override { return Eigen::VectorXd::Zero(n_); }
  PotentialValue eval(const Eigen::VectorXd& y) const override;
  std::vector<Eigen::MatrixXd> third(const Eigen::VectorXd& y) const override;

 private:
  int n_;
  double radius_;
};

}  // namespace toricj
