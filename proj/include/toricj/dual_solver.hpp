#pragma once

// Finite-difference solver for the dual equation on P_β. The unknown is the
// symplectic potential h = h_can + u with h_can the Guillemin potential of P_β;
// only the smooth part u lives on the grid. The flow ∂u/∂t = residual is run
// on interior nodes with a frozen boundary ring.

#include "toricj/legendre.hpp"
#include "toricj/oracles.hpp"
#include "toricj/problem.hpp"

#include <Eigen/Sparse>

#include <array>
#include <functional>
#include <string>

namespace toricj {

class ConvexityLost : public std::runtime_error {
 public:
  ConvexityLost(std::size_t node, Eigen::VectorXd point, const std::string& what)
      : std::runtime_error(what), node_(node), point_(std::move(point)) {}
  std::size_t node() const { return node_; }
  const Eigen::VectorXd& point() const { return point_; }

 private:
  std::size_t node_;
  Eigen::VectorXd point_;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// Uniform grid over the bounding box of P_β with `nodes_per_axis` nodes on
/// each axis. Active nodes satisfy ℓ_i ≥ margin for every facet; ring nodes are
/// active nodes with an inactive (or missing) neighbour among the 3^n − 1
/// surrounding nodes; the rest are interior and carry full central stencils.
class PotentialGrid {
 public:
  PotentialGrid(const DelzantPolytope& beta, int nodes_per_axis, double margin);

  int dimension() const { return n_; }
  int nodes_per_axis() const { return N_; }
  double margin() const { return margin_; }
  const Eigen::VectorXd& origin() const { return origin_; }
  const Eigen::VectorXd& spacing() const { return spacing_; }
  double cell_volume() const { return spacing_.prod(); }
  std::size_t size() const { return kind_.size(); }

  Eigen::VectorXd point(std::size_t node) const;
  std::array<int, 2> index(std::size_t node) const;
  /// Node at integer offset (dx, dy) from `node`, or npos when off the grid.
  std::size_t neighbor(std::size_t node, int dx, int dy) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool is_active(std::size_t node) const { return kind_[node] != Kind::Inactive; }
  bool is_ring(std::size_t node) const { return kind_[node] == Kind::Ring; }
  bool is_interior(std::size_t node) const { return kind_[node] == Kind::Interior; }
  const std::vector<std::size_t>& active_nodes() const { return active_; }
  const std::vector<std::size_t>& ring_nodes() const { return ring_; }
  const std::vector<std::size_t>& interior_nodes() const { return interior_; }

  const GuilleminPotential& canonical() const { return canonical_; }
  /// Smallest facet value ℓ_i at the node.
  double depth(std::size_t node) const;

  void set_ring(const ScalarField& data);
  void set_active(const ScalarField& data);

  /// Smooth part u, one entry per node (inactive entries unused).
  Eigen::VectorXd u;

 private:
  enum class Kind { Inactive, Ring, Interior };
  int n_, N_;
  double margin_;
  Eigen::VectorXd origin_, spacing_;
  GuilleminPotential canonical_;
  std::vector<Kind> kind_;
  std::vector<std::size_t> active_, ring_, interior_;
};

/// The smooth part of an exact solution, for ring data or initial states.
ScalarField smooth_part(const ExactSolution& solution);

struct ResidualField {
  std::vector<std::size_t> nodes;  ///< interior nodes, grid order
  Eigen::VectorXd values;
  double sup = 0.0;
  double l2 = 0.0;  ///< sqrt(Σ R²·cell volume)
};

/// Evaluates the residual and its Jacobian with respect to interior u. Keeps
/// per-node Newton warm starts between calls.
class DualOperator {
 public:
  explicit DualOperator(const ProblemSpec& problem);

  /// Residual on interior nodes; fills `jacobian` (rows and columns ordered as
  /// grid.interior_nodes()) when non-null. Throws ConvexityLost, NewtonDiverged.
  ResidualField evaluate(const PotentialGrid& grid, Eigen::SparseMatrix<double>* jacobian = nullptr);

  /// max over interior nodes of Σ_ij |∂R/∂h_ij|.
  double coefficient_bound(const PotentialGrid& grid);

  const ProblemSpec& problem() const { return problem_; }

 private:
  const ProblemSpec& problem_;
  GuilleminPotential alpha_;
  LegendreEvaluator legendre_;
  std::vector<Eigen::VectorXd> warm_;
  std::vector<double> coefficient_;
};

ResidualField residual(const ProblemSpec& problem, const PotentialGrid& grid);

enum class FlowScheme { Explicit, LinearlyImplicit };
enum class Termination { Converged, MaxSteps, StepRejected, ConvexityLost };
std::string to_string(FlowScheme s);
std::string to_string(Termination t);

struct StepRecord {
  int step = 0;
  double t = 0.0, dt = 0.0, res_sup = 0.0, res_l2 = 0.0, E = 0.0, dJ = 0.0;
};

struct FlowTrace {
  std::vector<StepRecord> steps;
  Termination reason = Termination::MaxSteps;
  int rejected = 0;  ///< trial steps discarded by the energy check
  std::string message;
};

struct FlowOptions {
  double tol = 1e-8;
  int max_steps = 2000;
  FlowScheme scheme = FlowScheme::LinearlyImplicit;
  double gamma = 0.2;
  int max_halvings = 20;
  /// Growth factor of dt after an accepted implicit step, and its cap.
  double growth = 2.0;
  double max_dt = 1e8;
  /// Ring values; the ring is left untouched when empty.
  ScalarField boundary;
  /// Replace interior u by the discrete harmonic extension of the ring values
  /// before the first step, so that the start matches the boundary data.
  bool harmonic_start = true;
};

struct FlowResult {
  PotentialGrid grid;
  FlowTrace trace;
};

/// dt = γ·min(Δy)²/max(1, coefficient bound).
double explicit_time_step(const ProblemSpec& problem, const PotentialGrid& grid, double gamma = 0.2);

/// Interior u ← solution of the discrete Laplace equation with the ring values
/// as Dirichlet data.
void harmonic_extension(PotentialGrid& grid);

/// One step of the chosen scheme with step size dt; the ring stays frozen.
PotentialGrid flow_step(const ProblemSpec& problem, const PotentialGrid& grid, double dt,
                        FlowScheme scheme = FlowScheme::Explicit);

/// Runs the flow until the sup residual is ≤ tol. A trial step that raises E
/// by more than 1e-8 relative (or loses convexity, for the implicit scheme) is
/// discarded and dt halved; more than max_halvings consecutive halvings end
/// the run. ConvexityLost under the explicit scheme ends the run with the last
/// good state.
FlowResult solve_dual_flow(const ProblemSpec& problem, PotentialGrid grid, const FlowOptions& options);

/// E = n!·Σ R²·cell volume over interior nodes.
double energy_E(const ProblemSpec& problem, const PotentialGrid& grid);
double energy_from(const ResidualField& r, const PotentialGrid& grid);
/// Accumulated ΔJ = −∫E dt of the last recorded step.
double functional_dJ(const FlowTrace& trace);

/// h_can + multilinear interpolation of nodal u, ∇u and D²u. Derivatives at
/// interior nodes are central differences; ring and inactive nodes take a
/// Taylor extension from the nearest interior node.
class GridPotential : public ConvexPotential {
 public:
  explicit GridPotential(const PotentialGrid& grid);
  int dimension() const override { return grid_.dimension(); }
  bool in_domain(const Eigen::VectorXd& y) const override { return grid_.canonical().in_domain(y); }
  Eigen::VectorXd interior_point() const override { return grid_.canonical().interior_point(); }
  PotentialValue eval(const Eigen::VectorXd& y) const override;

 private:
  const PotentialGrid& grid_;
  std::vector<double> value_;
  std::vector<Eigen::VectorXd> grad_;
  std::vector<Eigen::MatrixXd> hess_;
};

/// I = n!∫[φ(∇ĥ(y)) − φ(∇h(y))]dy over {ℓ_i ≥ margin}, with φ = g − ĝ the
/// difference of the Legendre duals of h and ĥ. Boundary cells are clipped to
/// the region and sampled at their centroids.
double compute_I(const ProblemSpec& problem, const PotentialGrid& h, const PotentialGrid& h_hat);

/// max |u − u_exact| over active nodes with depth ≥ deep_margin.
double max_deviation(const PotentialGrid& grid, const ExactSolution& solution, double deep_margin);

}  // namespace toricj
