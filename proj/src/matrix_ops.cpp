#include "toricj/matrix_ops.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace toricj {

namespace {

using Kind = OperatorError::Kind;

bool is_hermitian(const HermitianMatrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

struct Decomposition {
  Eigen::VectorXd lambda;  // ascending
  HermitianMatrix U;       // eigenvectors of S h S
  HermitianMatrix S;       // g^{-1/2}
};

Decomposition decompose(const MetricPair& pair) {
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> eg(pair.g);
  Eigen::VectorXd inv_sqrt = eg.eigenvalues().cwiseSqrt().cwiseInverse();
  HermitianMatrix S = eg.eigenvectors() * inv_sqrt.cast<std::complex<double>>().asDiagonal() *
                      eg.eigenvectors().adjoint();
  HermitianMatrix C = S * pair.h * S;
  C = 0.5 * (C + C.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> ec(C);
  return {ec.eigenvalues(), ec.eigenvectors(), S};
}

double product(const Eigen::VectorXd& v) { return v.prod(); }

}  // namespace

Spectrum::Spectrum(Eigen::VectorXd values) : lambda(std::move(values)) {
  for (int i = 0; i < lambda.size(); ++i)
    if (!(lambda[i] > 0.0))
      throw OperatorError(Kind::NonPositiveEigenvalue, "spectrum entry " + std::to_string(i) + " is not positive");
}

MetricPair::MetricPair(HermitianMatrix g_, HermitianMatrix h_) : g(std::move(g_)), h(std::move(h_)) {
  if (g.rows() != h.rows() || !is_hermitian(g) || !is_hermitian(h))
    throw OperatorError(Kind::NotHermitian, "metric pair must be Hermitian of equal size");
  Eigen::LLT<HermitianMatrix> lg(g), lh(h);
  if (lg.info() != Eigen::Success || lh.info() != Eigen::Success)
    throw OperatorError(Kind::NotPositiveDefinite, "metric pair must be positive definite");
}

double f_b(const Spectrum& s, double b) {
  return s.lambda.cwiseInverse().sum() + b / product(s.lambda);
}

Eigen::VectorXd grad_f_b(const Spectrum& s, double b) {
  const double prod = product(s.lambda);
  Eigen::VectorXd g(s.size());
  for (int i = 0; i < s.size(); ++i) {
    const double l = s.lambda[i];
    g[i] = -1.0 / (l * l) - b / (l * prod);
  }
  return g;
}

Eigen::MatrixXd hess_f_b(const Spectrum& s, double b) {
  const double prod = product(s.lambda);
  const int n = s.size();
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double li = s.lambda[i], lj = s.lambda[j];
      H(i, j) = b * (i == j ? 2.0 : 1.0) / (li * lj * prod) + (i == j ? 2.0 / (li * li * li) : 0.0);
    }
  return H;
}

double divided_difference(const Spectrum& s, double b, int i, int j) {
  const double li = s.lambda[i], lj = s.lambda[j];
  if (std::abs(li - lj) <= 1e-8 * std::max(li, lj)) {
    Eigen::VectorXd merged = s.lambda;
    merged[i] = merged[j] = 0.5 * (li + lj);
    const Eigen::MatrixXd H = hess_f_b(Spectrum(merged), b);
    return H(i, i) - H(i, j);
  }
  const Eigen::VectorXd g = grad_f_b(s, b);
  return (g[i] - g[j]) / (li - lj);
}

Spectrum spectrum(const MetricPair& pair) { return Spectrum(decompose(pair).lambda); }

double F_b(const MetricPair& pair, double b) { return f_b(spectrum(pair), b); }
double Q_op(const MetricPair& pair) { return F_b(pair, 0.0); }

double P_of(const Spectrum& s) {
  // Dropping the reciprocal of the largest eigenvalue maximizes Σ_{i≠k} 1/λ_i.
  return s.lambda.cwiseInverse().sum() - 1.0 / s.lambda.maxCoeff();
}

double P_op(const MetricPair& pair) { return P_of(spectrum(pair)); }

HermitianMatrix grad_F(const MetricPair& pair, double b) {
  const auto d = decompose(pair);
  const Eigen::VectorXd g = grad_f_b(Spectrum(d.lambda), b);
  return d.S * d.U * g.cast<std::complex<double>>().asDiagonal() * d.U.adjoint() * d.S;
}

double hessian_form(const MetricPair& pair, const HermitianMatrix& direction, double b) {
  if (!is_hermitian(direction)) throw OperatorError(Kind::NotHermitian, "direction must be Hermitian");
  const auto d = decompose(pair);
  const Spectrum s(d.lambda);
  const HermitianMatrix Bp = d.U.adjoint() * d.S * direction * d.S * d.U;
  const Eigen::MatrixXd H = hess_f_b(s, b);
  const int n = s.size();
  double value = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      value += H(i, j) * Bp(i, i).real() * Bp(j, j).real();
      if (i != j) value += divided_difference(s, b, i, j) * std::norm(Bp(i, j));
    }
  return value;
}

double strong_convexity_form(const HermitianMatrix& a, const HermitianMatrix& dir, double b) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || dir.rows() != n || dir.cols() != n)
    throw OperatorError(Kind::NotDiagonal, "matrix sizes do not agree");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > 0.0) throw OperatorError(Kind::NotDiagonal, "A must be diagonal");
  if (!is_hermitian(dir)) throw OperatorError(Kind::NotHermitian, "B must be Hermitian");
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = a(i, i).real();
  const Spectrum s(lambda);
  const Eigen::VectorXd g = grad_f_b(s, b);
  const Eigen::MatrixXd H = hess_f_b(s, b);
  double value = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      value += H(p, q) * dir(p, p).real() * dir(q, q).real();
      if (p != q) value += divided_difference(s, b, p, q) * std::norm(dir(p, q));
      value += std::norm(dir(p, q)) * g[p] / lambda[q];
    }
  return value;
}

EpsThresholds eps_thresholds(double K, int n, double C_theta) {
  if (!(K > 0.0) || n < 1 || !(C_theta >= 0.0))
    throw std::invalid_argument("eps_thresholds requires K > 0, n >= 1, C_theta >= 0");
  EpsThresholds t;
  t.K = K;
  t.n = n;
  t.C_theta = C_theta;
  const double k_pow = std::pow(K, -(n - 1));
  t.eps1 = 2.0 * k_pow / (n + 1);
  t.eps3 = std::pow(static_cast<double>(n), n) * C_theta / (2.0 * std::pow(K + 3.0 * C_theta, n));
  t.eps4 = k_pow;
  return t;
}

PathGuardResult path_guard(const std::vector<Spectrum>& path, double K, double C_theta, double eps) {
  if (path.empty()) throw OperatorError(Kind::HypothesisViolated, "empty path");
  const auto t = eps_thresholds(K, path.front().size(), C_theta);
  if (eps < 0.0 || (eps > 0.0 && !(eps < t.eps3)))
    throw OperatorError(Kind::HypothesisViolated, "epsilon must lie in [0, eps3)");
  if (!(f_b(path.front(), 0.0) < K))
    throw OperatorError(Kind::HypothesisViolated, "F_0(A_0) < K fails");
  PathGuardResult r;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!(f_b(path[k], -eps) < K + 2.0 * C_theta))
      throw OperatorError(Kind::HypothesisViolated,
                          "F_{-eps}(A_t) < K + 2 C_theta fails at sample " + std::to_string(k));
    r.max_F0 = std::max(r.max_F0, f_b(path[k], 0.0));
  }
  r.holds = r.max_F0 < K + 3.0 * C_theta;
  return r;
}

OmegaGap change_of_omega_gap(const HermitianMatrix& g1, const HermitianMatrix& g2, const HermitianMatrix& h,
                             double eps, double sigma, double K) {
  if (!(sigma >= 0.0 && sigma < 1.0) || !(eps >= 0.0 && eps < 1.0))
    throw OperatorError(Kind::HypothesisViolated, "need sigma in [0,1) and eps in [0,1)");
  const MetricPair p1(g1, h), p2(g2, h);
  const Spectrum ratio = spectrum(MetricPair(g1, g2));
  const double tol = 1e-12;
  if (ratio.lambda.minCoeff() < 1.0 - sigma - tol || ratio.lambda.maxCoeff() > 1.0 + sigma + tol)
    throw OperatorError(Kind::SandwichViolated, "(1-sigma) g1 <= g2 <= (1+sigma) g1 fails");
  if (Q_op(p2) > K * (1.0 + tol)) throw OperatorError(Kind::HypothesisViolated, "Q_{g2}(h) <= K fails");
  const int n = p1.size();
  OmegaGap r;
  r.gap = std::abs(F_b(p1, -eps) - F_b(p2, -eps));
  r.bound = K * sigma / (1.0 - sigma) + eps * std::pow(K, n) * (std::pow(1.0 - sigma, -n) - 1.0);
  r.linear_bound = (n * K + std::pow(K, n) * (std::pow(2.0, n) - 1.0)) * sigma;
  r.holds = r.gap <= r.bound * (1.0 + 1e-12) + 1e-14;
  return r;
}

FToPResult f_to_p_check(const MetricPair& pair, double eps, double K) {
  const int n = pair.size();
  const auto t = eps_thresholds(K, n, 0.0);
  if (eps < 0.0 || (eps > 0.0 && !(eps < t.eps4)))
    throw OperatorError(Kind::HypothesisViolated, "epsilon must lie in [0, eps4)");
  const Spectrum s = spectrum(pair);
  if (f_b(s, 0.0) > K * (1.0 + 1e-12)) throw OperatorError(Kind::HypothesisViolated, "Q <= K fails");
  FToPResult r;
  const double F = f_b(s, -eps);
  r.slack = F - P_of(s);
  r.holds = r.slack >= -1e-12 * (1.0 + std::abs(F));
  return r;
}

}  // namespace toricj
