#pragma once

// Eigenvalue operators of a pair of Hermitian metrics (g, h):
//   f_b(λ) = Σ 1/λ_i + b/(λ_1⋯λ_n),  F_b = f_b(eig(g⁻¹h)),  Q = F_0,
//   P = max_k Σ_{i≠k} 1/λ_i,
// their first and second derivatives, and the explicit ε-thresholds used to
// keep f_{-ε} convex, monotone and comparable to P.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace toricj {

class OperatorError : public std::runtime_error {
 public:
  enum class Kind { NonPositiveEigenvalue, NotPositiveDefinite, NotDiagonal, NotHermitian, HypothesisViolated,
                    SandwichViolated };
  OperatorError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

using HermitianMatrix = Eigen::MatrixXcd;

struct Spectrum {
  Eigen::VectorXd lambda;
  /// Throws NonPositiveEigenvalue unless every entry is positive.
  explicit Spectrum(Eigen::VectorXd values);
  int size() const { return static_cast<int>(lambda.size()); }
};

/// Positive-definite Hermitian g and h; eigenvalues of g⁻¹h come from the
/// symmetrized form g^{-1/2} h g^{-1/2}.
struct MetricPair {
  HermitianMatrix g, h;
  MetricPair(HermitianMatrix g, HermitianMatrix h);
  int size() const { return static_cast<int>(g.rows()); }
};

double f_b(const Spectrum& s, double b);
Eigen::VectorXd grad_f_b(const Spectrum& s, double b);
Eigen::MatrixXd hess_f_b(const Spectrum& s, double b);

/// (∂_i f − ∂_j f)/(λ_i − λ_j), switching to ∂_ii f − ∂_ij f when the relative
/// gap is below 1e-8.
double divided_difference(const Spectrum& s, double b, int i, int j);

/// Ascending eigenvalues of g⁻¹h.
Spectrum spectrum(const MetricPair& pair);

double F_b(const MetricPair& pair, double b);
double Q_op(const MetricPair& pair);
double P_op(const MetricPair& pair);
double P_of(const Spectrum& s);

/// Gradient with respect to h: dF_b = Re tr(G·dh).
HermitianMatrix grad_F(const MetricPair& pair, double b);

/// d²/dt² F_b(g, h + tB) at t = 0.
double hessian_form(const MetricPair& pair, const HermitianMatrix& direction, double b);

/// Σ_{p,r} ∂_p∂_r f B_pp B_rr + Σ_{p≠q} DD_pq |B_pq|² + Σ_{i,j} |B_ij|² ∂_i f / λ_j
/// for diagonal positive A = diag(λ).
double strong_convexity_form(const HermitianMatrix& a, const HermitianMatrix& b_dir, double b);

struct EpsThresholds {
  double eps1, eps3, eps4;
  double K, C_theta;
  int n;
};

EpsThresholds eps_thresholds(double K, int n, double C_theta);

struct PathGuardResult {
  bool holds = false;
  double max_F0 = 0.0;
};

/// Checks the continuous-path estimate on a sampled path: hypotheses
/// F_0(A_0) < K, F_{-ε}(A_t) < K + 2C_θ, ε < ε₃, and then F_0(A_t) < K + 3C_θ.
PathGuardResult path_guard(const std::vector<Spectrum>& path, double K, double C_theta, double eps);

struct OmegaGap {
  double gap = 0.0;
  /// Bound valid for every σ ∈ [0,1): K·σ/(1−σ) + ε·K^n·((1−σ)^{−n} − 1).
  double bound = 0.0;
  /// The linear-in-σ constant (nK + K^n(2^n − 1))·σ, reported for comparison.
  double linear_bound = 0.0;
  bool holds = false;
};

/// |F_{g1,−ε}(h) − F_{g2,−ε}(h)| under (1−σ)g1 ≤ g2 ≤ (1+σ)g1 and Q_{g2}(h) ≤ K.
OmegaGap change_of_omega_gap(const HermitianMatrix& g1, const HermitianMatrix& g2, const HermitianMatrix& h,
                             double eps, double sigma, double K);

struct FToPResult {
  bool holds = false;
  double slack = 0.0;  ///< F_{−ε} − P
};

FToPResult f_to_p_check(const MetricPair& pair, double eps, double K);

}  // namespace toricj
