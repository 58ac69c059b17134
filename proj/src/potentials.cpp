#include "toricj/potentials.hpp"

#include <cmath>

namespace toricj {

std::vector<Eigen::MatrixXd> ConvexPotential::third(const Eigen::VectorXd&) const {
  throw std::logic_error("third derivatives are not available for this potential");
}

GuilleminPotential::GuilleminPotential(const DelzantPolytope& polytope) {
  const int n = polytope.dimension();
  const auto m = static_cast<int>(polytope.fan().size());
  normals_.resize(m, n);
  offsets_.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) normals_(i, j) = static_cast<double>(polytope.fan().normals[i][j]);
    offsets_[i] = to_double(polytope.offsets()[static_cast<std::size_t>(i)]);
  }
  center_ = Eigen::VectorXd::Zero(n);
  for (const auto& v : polytope.vertices())
    for (int j = 0; j < n; ++j) center_[j] += to_double(v.point[static_cast<std::size_t>(j)]);
  center_ /= static_cast<double>(polytope.vertices().size());
}

Eigen::VectorXd GuilleminPotential::facet_values(const Eigen::VectorXd& y) const {
  return normals_ * y + offsets_;
}

bool GuilleminPotential::in_domain(const Eigen::VectorXd& y) const {
  return y.size() == dimension() && (facet_values(y).array() > 0.0).all();
}

PotentialValue GuilleminPotential::eval(const Eigen::VectorXd& y) const {
  if (!in_domain(y)) throw BoundaryOrExterior("Guillemin potential evaluated outside the open polytope");
  const Eigen::VectorXd l = facet_values(y);
  const int n = dimension();
  PotentialValue out;
  out.grad = Eigen::VectorXd::Zero(n);
  out.hess = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < l.size(); ++i) {
    const Eigen::VectorXd u = normals_.row(i).transpose();
    const double log_l = std::log(l[i]);
    out.value += 0.5 * l[i] * log_l;
    out.grad += 0.5 * (log_l + 1.0) * u;
    out.hess += (0.5 / l[i]) * u * u.transpose();
  }
  return out;
}

std::vector<Eigen::MatrixXd> GuilleminPotential::third(const Eigen::VectorXd& y) const {
  if (!in_domain(y)) throw BoundaryOrExterior("Guillemin potential evaluated outside the open polytope");
  const Eigen::VectorXd l = facet_values(y);
  const int n = dimension();
  std::vector<Eigen::MatrixXd> t(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < l.size(); ++i) {
    const Eigen::VectorXd u = normals_.row(i).transpose();
    const Eigen::MatrixXd uu = u * u.transpose();
    for (int m = 0; m < n; ++m) t[static_cast<std::size_t>(m)] -= (0.5 * u[m] / (l[i] * l[i])) * uu;
  }
  return t;
}

PotentialValue guillemin_eval(const DelzantPolytope& polytope, const Eigen::VectorXd& y) {
  return GuilleminPotential(polytope).eval(y);
}

bool QuadraticPotential::in_domain(const Eigen::VectorXd& y) const {
  return y.size() == n_ && (y.array().abs() < radius_).all();
}

PotentialValue QuadraticPotential::eval(const Eigen::VectorXd& y) const {
  if (!in_domain(y)) throw BoundaryOrExterior("quadratic potential evaluated outside its box");
  return {0.5 * y.squaredNorm(), y, Eigen::MatrixXd::Identity(n_, n_)};
}

std::vector<Eigen::MatrixXd> QuadraticPotential::third(const Eigen::VectorXd&) const {
  return std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n_), Eigen::MatrixXd::Zero(n_, n_));
}

}  // namespace toricj
