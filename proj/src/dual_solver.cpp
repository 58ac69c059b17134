#include "toricj/dual_solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace toricj {

// ---------------------------------------------------------------- grid

PotentialGrid::PotentialGrid(const DelzantPolytope& beta, int nodes_per_axis, double margin)
    : n_(beta.dimension()), N_(nodes_per_axis), margin_(margin), canonical_(beta) {
  if (n_ < 1 || n_ > 2) throw std::invalid_argument("grids exist for n = 1 and n = 2 only");
  if (N_ < 3) throw std::invalid_argument("a grid needs at least 3 nodes per axis");
  if (!(margin >= 0.0)) throw std::invalid_argument("margin must be non-negative");
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n_, INFINITY), hi = Eigen::VectorXd::Constant(n_, -INFINITY);
  for (const auto& v : beta.vertices())
    for (int j = 0; j < n_; ++j) {
      lo[j] = std::min(lo[j], to_double(v.point[static_cast<std::size_t>(j)]));
      hi[j] = std::max(hi[j], to_double(v.point[static_cast<std::size_t>(j)]));
    }
  origin_ = lo;
  spacing_ = (hi - lo) / static_cast<double>(N_ - 1);
  std::size_t total = 1;
  for (int j = 0; j < n_; ++j) total *= static_cast<std::size_t>(N_);
  kind_.assign(total, Kind::Inactive);
  u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
  for (std::size_t p = 0; p < total; ++p)
    if (depth(p) >= margin_) kind_[p] = Kind::Interior;
  const int dy_range = n_ == 2 ? 1 : 0;
  for (std::size_t p = 0; p < total; ++p) {
    if (kind_[p] == Kind::Inactive) continue;
    bool ring = false;
    for (int dy = -dy_range; dy <= dy_range && !ring; ++dy)
      for (int dx = -1; dx <= 1 && !ring; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const std::size_t q = neighbor(p, dx, dy);
        if (q == npos || kind_[q] == Kind::Inactive) ring = true;
      }
    if (ring) kind_[p] = Kind::Ring;
  }
  for (std::size_t p = 0; p < total; ++p) {
    if (kind_[p] != Kind::Inactive) active_.push_back(p);
    if (kind_[p] == Kind::Ring) ring_.push_back(p);
    if (kind_[p] == Kind::Interior) interior_.push_back(p);
  }
}

Eigen::VectorXd PotentialGrid::point(std::size_t node) const {
  const auto ij = index(node);
  Eigen::VectorXd y(n_);
  for (int j = 0; j < n_; ++j) y[j] = origin_[j] + spacing_[j] * ij[static_cast<std::size_t>(j)];
  return y;
}

std::array<int, 2> PotentialGrid::index(std::size_t node) const {
  const auto N = static_cast<std::size_t>(N_);
  return {static_cast<int>(node % N), static_cast<int>(node / N)};
}

std::size_t PotentialGrid::neighbor(std::size_t node, int dx, int dy) const {
  const auto ij = index(node);
  const int i = ij[0] + dx, j = ij[1] + dy;
  if (i < 0 || i >= N_) return npos;
  if (n_ == 1) return dy == 0 ? static_cast<std::size_t>(i) : npos;
  if (j < 0 || j >= N_) return npos;
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(i);
}

double PotentialGrid::depth(std::size_t node) const { return canonical_.facet_values(point(node)).minCoeff(); }

void PotentialGrid::set_ring(const ScalarField& data) {
  for (std::size_t p : ring_) u[static_cast<Eigen::Index>(p)] = data(point(p));
}

void PotentialGrid::set_active(const ScalarField& data) {
  for (std::size_t p : active_) u[static_cast<Eigen::Index>(p)] = data(point(p));
}

ScalarField smooth_part(const ExactSolution& solution) {
  return [&solution](const Eigen::VectorXd& y) { return solution.u(y).value; };
}

// ---------------------------------------------------------------- stencils

namespace {

struct Tap {
  int dx, dy;
  double w;
};

struct Stencils {
  std::vector<std::vector<Tap>> grad;               // [k]
  std::vector<std::vector<std::vector<Tap>>> hess;  // [i][j]
};

Stencils make_stencils(const PotentialGrid& grid) {
  const int n = grid.dimension();
  const Eigen::VectorXd& h = grid.spacing();
  Stencils s;
  s.grad.resize(static_cast<std::size_t>(n));
  s.hess.assign(static_cast<std::size_t>(n), std::vector<std::vector<Tap>>(static_cast<std::size_t>(n)));
  auto axis = [](int k, int step) { return k == 0 ? std::array<int, 2>{step, 0} : std::array<int, 2>{0, step}; };
  for (int k = 0; k < n; ++k) {
    const auto plus = axis(k, 1), minus = axis(k, -1);
    const double hk = h[k];
    s.grad[static_cast<std::size_t>(k)] = {{plus[0], plus[1], 0.5 / hk}, {minus[0], minus[1], -0.5 / hk}};
    s.hess[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = {
        {plus[0], plus[1], 1.0 / (hk * hk)}, {0, 0, -2.0 / (hk * hk)}, {minus[0], minus[1], 1.0 / (hk * hk)}};
  }
  if (n == 2) {
    const double w = 0.25 / (h[0] * h[1]);
    std::vector<Tap> mixed = {{1, 1, w}, {1, -1, -w}, {-1, 1, -w}, {-1, -1, w}};
    s.hess[0][1] = mixed;
    s.hess[1][0] = mixed;
  }
  return s;
}

struct Derivatives {
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

// Central-difference derivatives of u at an interior node.
Derivatives central(const PotentialGrid& grid, const Stencils& st, std::size_t p) {
  const int n = grid.dimension();
  Derivatives d{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  for (int k = 0; k < n; ++k)
    for (const Tap& t : st.grad[static_cast<std::size_t>(k)])
      d.grad[k] += t.w * grid.u[static_cast<Eigen::Index>(grid.neighbor(p, t.dx, t.dy))];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const Tap& t : st.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        d.hess(i, j) += t.w * grid.u[static_cast<Eigen::Index>(grid.neighbor(p, t.dx, t.dy))];
  return d;
}

bool positive_definite(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

std::string describe(const Eigen::VectorXd& y) {
  std::ostringstream out;
  out << "(";
  for (int j = 0; j < y.size(); ++j) out << (j ? ", " : "") << y[j];
  out << ")";
  return out.str();
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- operator

DualOperator::DualOperator(const ProblemSpec& problem)
    : problem_(problem), alpha_(problem.pair.alpha()), legendre_(alpha_) {}

ResidualField DualOperator::evaluate(const PotentialGrid& grid, Eigen::SparseMatrix<double>* jacobian) {
  const int n = grid.dimension();
  const Stencils st = make_stencils(grid);
  const auto& nodes = grid.interior_nodes();
  if (warm_.size() != grid.size()) warm_.assign(grid.size(), Eigen::VectorXd());
  coefficient_.assign(nodes.size(), 0.0);

  std::vector<int> column;
  std::vector<Eigen::Triplet<double>> triplets;
  if (jacobian) {
    column.assign(grid.size(), -1);
    for (std::size_t r = 0; r < nodes.size(); ++r) column[nodes[r]] = static_cast<int>(r);
    triplets.reserve(nodes.size() * 9);
  }

  ResidualField out;
  out.nodes = nodes;
  out.values.resize(static_cast<Eigen::Index>(nodes.size()));
  const double b = problem_.b_value;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const std::size_t p = nodes[r];
    const Eigen::VectorXd y = grid.point(p);
    const PotentialValue can = grid.canonical().eval(y);
    const Derivatives du = central(grid, st, p);
    const Eigen::VectorXd g = can.grad + du.grad;
    const Eigen::MatrixXd H = can.hess + du.hess;
    if (!positive_definite(H))
      throw ConvexityLost(p, y, "D²h is not positive definite at " + describe(y));
    const LegendreValue lv = legendre_.eval(g, warm_[p].size() ? &warm_[p] : nullptr);
    warm_[p] = lv.grad;
    const Eigen::MatrixXd& F = lv.hess;
    const double detF = F.determinant(), detH = H.determinant();
    out.values[static_cast<Eigen::Index>(r)] = F.cwiseProduct(H).sum() + b * detF * detH - problem_.rhs(y);

    const Eigen::MatrixXd dR_dH = F + b * detF * detH * H.inverse().transpose();
    coefficient_[r] = dR_dH.cwiseAbs().sum();
    if (!jacobian) continue;
    const auto dF = legendre_.hess_derivative(lv);
    const Eigen::MatrixXd Finv = F.inverse();
    for (int k = 0; k < n; ++k) {
      const auto& dFk = dF[static_cast<std::size_t>(k)];
      const double dR_dg = dFk.cwiseProduct(H).sum() + b * detH * detF * (Finv * dFk).trace();
      for (const Tap& t : st.grad[static_cast<std::size_t>(k)]) {
        const int c = column[grid.neighbor(p, t.dx, t.dy)];
        if (c >= 0) triplets.emplace_back(static_cast<int>(r), c, dR_dg * t.w);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const Tap& t : st.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          const int c = column[grid.neighbor(p, t.dx, t.dy)];
          if (c >= 0) triplets.emplace_back(static_cast<int>(r), c, dR_dH(i, j) * t.w);
        }
  }
  out.sup = nodes.empty() ? 0.0 : out.values.lpNorm<Eigen::Infinity>();
  out.l2 = std::sqrt(out.values.squaredNorm() * grid.cell_volume());
  if (jacobian) {
    const auto m = static_cast<Eigen::Index>(nodes.size());
    jacobian->resize(m, m);
    jacobian->setFromTriplets(triplets.begin(), triplets.end());
  }
  return out;
}

double DualOperator::coefficient_bound(const PotentialGrid& grid) {
  evaluate(grid);
  double bound = 0.0;
  for (double c : coefficient_) bound = std::max(bound, c);
  return bound;
}

ResidualField residual(const ProblemSpec& problem, const PotentialGrid& grid) {
  DualOperator op(problem);
  return op.evaluate(grid);
}

double energy_from(const ResidualField& r, const PotentialGrid& grid) {
  return factorial(grid.dimension()) * r.values.squaredNorm() * grid.cell_volume();
}

double energy_E(const ProblemSpec& problem, const PotentialGrid& grid) {
  return energy_from(residual(problem, grid), grid);
}

double functional_dJ(const FlowTrace& trace) { return trace.steps.empty() ? 0.0 : trace.steps.back().dJ; }

std::string to_string(FlowScheme s) { return s == FlowScheme::Explicit ? "explicit" : "implicit"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxSteps: return "max_steps";
    case Termination::StepRejected: return "step_rejected";
    case Termination::ConvexityLost: return "convexity_lost";
  }
  return "unknown";
}

// ---------------------------------------------------------------- flow

double explicit_time_step(const ProblemSpec& problem, const PotentialGrid& grid, double gamma) {
  DualOperator op(problem);
  const double h = grid.spacing().minCoeff();
  return gamma * h * h / std::max(1.0, op.coefficient_bound(grid));
}

namespace {

// Returns false when the implicit system cannot be factored.
bool apply_step(PotentialGrid& grid, const ResidualField& r, const Eigen::SparseMatrix<double>* jacobian, double dt,
                FlowScheme scheme) {
  const auto& nodes = grid.interior_nodes();
  Eigen::VectorXd delta;
  if (scheme == FlowScheme::Explicit) {
    delta = dt * r.values;
  } else {
    Eigen::SparseMatrix<double> a = -(*jacobian);
    for (Eigen::Index i = 0; i < a.rows(); ++i) a.coeffRef(i, i) += 1.0 / dt;
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) return false;
    delta = lu.solve(r.values);
    if (lu.info() != Eigen::Success || !delta.allFinite()) return false;
  }
  for (std::size_t k = 0; k < nodes.size(); ++k)
    grid.u[static_cast<Eigen::Index>(nodes[k])] += delta[static_cast<Eigen::Index>(k)];
  return true;
}

}  // namespace

void harmonic_extension(PotentialGrid& grid) {
  const auto& nodes = grid.interior_nodes();
  if (nodes.empty()) return;
  std::vector<int> column(grid.size(), -1);
  for (std::size_t r = 0; r < nodes.size(); ++r) column[nodes[r]] = static_cast<int>(r);
  const int n = grid.dimension();
  const auto m = static_cast<Eigen::Index>(nodes.size());
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const int row = static_cast<int>(r);
    for (int k = 0; k < n; ++k) {
      const double w = 1.0 / (grid.spacing()[k] * grid.spacing()[k]);
      triplets.emplace_back(row, row, 2.0 * w);
      for (int step : {-1, 1}) {
        const std::size_t q = grid.neighbor(nodes[r], k == 0 ? step : 0, k == 1 ? step : 0);
        if (column[q] >= 0) triplets.emplace_back(row, column[q], -w);
        else rhs[row] += w * grid.u[static_cast<Eigen::Index>(q)];
      }
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  const Eigen::VectorXd x = solver.solve(rhs);
  for (std::size_t r = 0; r < nodes.size(); ++r) grid.u[static_cast<Eigen::Index>(nodes[r])] = x[static_cast<Eigen::Index>(r)];
}

PotentialGrid flow_step(const ProblemSpec& problem, const PotentialGrid& grid, double dt, FlowScheme scheme) {
  DualOperator op(problem);
  Eigen::SparseMatrix<double> jac;
  const ResidualField r = op.evaluate(grid, scheme == FlowScheme::LinearlyImplicit ? &jac : nullptr);
  PotentialGrid next = grid;
  if (!apply_step(next, r, &jac, dt, scheme)) throw std::runtime_error("implicit system is singular");
  return next;
}

FlowResult solve_dual_flow(const ProblemSpec& problem, PotentialGrid grid, const FlowOptions& options) {
  if (options.boundary) grid.set_ring(options.boundary);
  if (options.harmonic_start) harmonic_extension(grid);
  FlowTrace trace;
  const bool implicit = options.scheme == FlowScheme::LinearlyImplicit;
  DualOperator op(problem);
  Eigen::SparseMatrix<double> jac;
  ResidualField r;
  try {
    r = op.evaluate(grid, implicit ? &jac : nullptr);
  } catch (const ConvexityLost& e) {
    trace.reason = Termination::ConvexityLost;
    trace.message = e.what();
    return {std::move(grid), std::move(trace)};
  }
  double E = energy_from(r, grid);
  trace.steps.push_back({0, 0.0, 0.0, r.sup, r.l2, E, 0.0});

  const double h = grid.spacing().minCoeff();
  double dt = options.gamma * h * h / std::max(1.0, op.coefficient_bound(grid));
  double t = 0.0, dJ = 0.0;
  int halvings = 0;
  int step = 0;
  while (true) {
    if (r.sup <= options.tol) {
      trace.reason = Termination::Converged;
      break;
    }
    if (step >= options.max_steps) {
      trace.reason = Termination::MaxSteps;
      trace.message = "no convergence after " + std::to_string(step) + " steps";
      break;
    }
    PotentialGrid trial = grid;
    bool ok = apply_step(trial, r, &jac, dt, options.scheme);
    ResidualField rn;
    Eigen::SparseMatrix<double> jn;
    std::string why = "energy increased";
    if (ok) {
      try {
        rn = op.evaluate(trial, implicit ? &jn : nullptr);
      } catch (const ConvexityLost& e) {
        if (!implicit) {
          trace.reason = Termination::ConvexityLost;
          trace.message = e.what();
          break;
        }
        ok = false;
        why = e.what();
      } catch (const NewtonDiverged& e) {
        ok = false;
        why = e.what();
      }
    } else {
      why = "implicit system is singular";
    }
    const double En = ok ? energy_from(rn, trial) : INFINITY;
    if (!ok || En > E * (1.0 + 1e-8)) {
      ++trace.rejected;
      if (++halvings > options.max_halvings) {
        trace.reason = Termination::StepRejected;
        trace.message = "step rejected after " + std::to_string(options.max_halvings) + " halvings: " + why;
        break;
      }
      dt *= 0.5;
      continue;
    }
    halvings = 0;
    ++step;
    t += dt;
    dJ -= 0.5 * (E + En) * dt;
    E = En;
    grid = std::move(trial);
    r = std::move(rn);
    jac = std::move(jn);
    trace.steps.push_back({step, t, dt, r.sup, r.l2, E, dJ});
    if (implicit) dt = std::min(dt * options.growth, options.max_dt);
  }
  return {std::move(grid), std::move(trace)};
}

// ---------------------------------------------------------------- grid potential

GridPotential::GridPotential(const PotentialGrid& grid) : grid_(grid) {
  const int n = grid.dimension();
  const Stencils st = make_stencils(grid);
  const std::size_t total = grid.size();
  if (grid.interior_nodes().empty()) throw std::invalid_argument("grid has no interior nodes");
  value_.assign(total, 0.0);
  grad_.assign(total, Eigen::VectorXd::Zero(n));
  hess_.assign(total, Eigen::MatrixXd::Zero(n, n));

  // Nearest interior node by breadth-first search over the 3^n − 1 neighbours.
  std::vector<std::size_t> source(total, PotentialGrid::npos);
  std::deque<std::size_t> queue;
  for (std::size_t p : grid.interior_nodes()) {
    source[p] = p;
    queue.push_back(p);
    const Derivatives d = central(grid, st, p);
    value_[p] = grid.u[static_cast<Eigen::Index>(p)];
    grad_[p] = d.grad;
    hess_[p] = d.hess;
  }
  const int dy_range = n == 2 ? 1 : 0;
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    for (int dy = -dy_range; dy <= dy_range; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const std::size_t q = grid.neighbor(p, dx, dy);
        if (q == PotentialGrid::npos || source[q] != PotentialGrid::npos) continue;
        source[q] = source[p];
        queue.push_back(q);
      }
  }
  for (std::size_t q = 0; q < total; ++q) {
    if (grid.is_interior(q)) continue;
    const std::size_t a = source[q];
    const Eigen::VectorXd d = grid.point(q) - grid.point(a);
    grad_[q] = grad_[a] + hess_[a] * d;
    hess_[q] = hess_[a];
    value_[q] = grid.is_active(q) ? grid.u[static_cast<Eigen::Index>(q)]
                                  : value_[a] + grad_[a].dot(d) + 0.5 * d.dot(hess_[a] * d);
  }
}

PotentialValue GridPotential::eval(const Eigen::VectorXd& y) const {
  PotentialValue v = grid_.canonical().eval(y);
  const int n = grid_.dimension();
  const int N = grid_.nodes_per_axis();
  std::array<int, 2> cell{0, 0};
  std::array<double, 2> frac{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double s = (y[k] - grid_.origin()[k]) / grid_.spacing()[k];
    const int i = std::clamp(static_cast<int>(std::floor(s)), 0, N - 2);
    cell[static_cast<std::size_t>(k)] = i;
    frac[static_cast<std::size_t>(k)] = s - i;
  }
  const std::size_t base = n == 1 ? static_cast<std::size_t>(cell[0])
                                  : static_cast<std::size_t>(cell[1]) * static_cast<std::size_t>(N) +
                                        static_cast<std::size_t>(cell[0]);
  const int corners = n == 1 ? 2 : 4;
  for (int c = 0; c < corners; ++c) {
    const int bx = c & 1, by = (c >> 1) & 1;
    double w = bx ? frac[0] : 1.0 - frac[0];
    if (n == 2) w *= by ? frac[1] : 1.0 - frac[1];
    const std::size_t q = grid_.neighbor(base, bx, by);
    v.value += w * value_[q];
    v.grad += w * grad_[q];
    v.hess += w * hess_[q];
  }
  return v;
}

// ---------------------------------------------------------------- functionals

namespace {

struct Sample {
  Eigen::VectorXd point;
  double weight;
};

using Polygon = std::vector<Eigen::Vector2d>;

Polygon clip(const Polygon& poly, const Eigen::Vector2d& a, double c) {
  // Keeps {z : a·z + c ≥ 0}.
  Polygon out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d& p = poly[i];
    const Eigen::Vector2d& q = poly[(i + 1) % poly.size()];
    const double fp = a.dot(p) + c, fq = a.dot(q) + c;
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

// Cells of the grid intersected with {ℓ_i ≥ margin}, sampled at centroids.
std::vector<Sample> region_samples(const PotentialGrid& grid) {
  const auto& pot = grid.canonical();
  const Eigen::MatrixXd& U = pot.normals();
  const Eigen::VectorXd c = pot.offsets().array() - grid.margin();
  const Eigen::VectorXd half = 0.5 * grid.spacing();
  std::vector<Sample> out;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Eigen::VectorXd y = grid.point(p);
    if (grid.dimension() == 1) {
      double lo = y[0] - half[0], hi = y[0] + half[0];
      for (int i = 0; i < U.rows(); ++i) {
        // U(i,0)·z + c_i ≥ 0
        const double root = -c[i] / U(i, 0);
        if (U(i, 0) > 0) lo = std::max(lo, root);
        else hi = std::min(hi, root);
      }
      if (hi > lo) out.push_back({Eigen::VectorXd::Constant(1, 0.5 * (lo + hi)), hi - lo});
      continue;
    }
    Polygon poly = {{y[0] - half[0], y[1] - half[1]},
                    {y[0] + half[0], y[1] - half[1]},
                    {y[0] + half[0], y[1] + half[1]},
                    {y[0] - half[0], y[1] + half[1]}};
    for (int i = 0; i < U.rows() && poly.size() >= 3; ++i)
      poly = clip(poly, Eigen::Vector2d(U(i, 0), U(i, 1)), c[i]);
    if (poly.size() < 3) continue;
    double area = 0.0;
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Eigen::Vector2d& a = poly[k];
      const Eigen::Vector2d& b = poly[(k + 1) % poly.size()];
      const double cross = a.x() * b.y() - b.x() * a.y();
      area += cross;
      centroid += cross * (a + b);
    }
    area *= 0.5;
    if (area <= 0.0) continue;
    centroid /= 6.0 * area;
    out.push_back({centroid, area});
  }
  return out;
}

}  // namespace

double compute_I(const ProblemSpec& problem, const PotentialGrid& h, const PotentialGrid& h_hat) {
  if (h.dimension() != problem.dimension() || h.size() != h_hat.size())
    throw std::invalid_argument("compute_I needs two grids of the same shape");
  const GridPotential gh(h), ghat(h_hat);
  const LegendreEvaluator leg_h(gh, 1e-10, 100), leg_hat(ghat, 1e-10, 100);
  double total = 0.0;
  for (const Sample& s : region_samples(h)) {
    const PotentialValue vh = gh.eval(s.point), vhat = ghat.eval(s.point);
    if (!positive_definite(vh.hess) || !positive_definite(vhat.hess))
      throw ConvexityLost(PotentialGrid::npos, s.point, "potential is not convex at " + describe(s.point));
    // φ(∇h(y)) = g(∇h(y)) − ĝ(∇h(y)) with g(∇h(y)) = <∇h, y> − h(y).
    const double phi_h = vh.grad.dot(s.point) - vh.value - leg_hat.eval(vh.grad, &s.point).value;
    // φ(∇ĥ(y)) = g(∇ĥ(y)) − (<∇ĥ, y> − ĥ(y)).
    const double phi_hat = leg_h.eval(vhat.grad, &s.point).value - (vhat.grad.dot(s.point) - vhat.value);
    total += (phi_hat - phi_h) * s.weight;
  }
  const double I = factorial(problem.dimension()) * total;
  if (I < -1e-8 * (1.0 + std::abs(total)))
    throw std::logic_error("computed I is negative: " + std::to_string(I));
  return I;
}

double max_deviation(const PotentialGrid& grid, const ExactSolution& solution, double deep_margin) {
  double worst = 0.0;
  for (std::size_t p : grid.active_nodes()) {
    if (grid.depth(p) < deep_margin) continue;
    worst = std::max(worst, std::abs(grid.u[static_cast<Eigen::Index>(p)] - solution.u(grid.point(p)).value));
  }
  return worst;
}

}  // namespace toricj
