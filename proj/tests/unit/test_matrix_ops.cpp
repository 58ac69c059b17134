#include "toricj/matrix_ops.hpp"

#include <doctest.h>

#include <cmath>

using namespace toricj;
using Eigen::VectorXd;

namespace {

Spectrum eig(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return Spectrum(x);
}

HermitianMatrix diag(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x.cast<std::complex<double>>().asDiagonal();
}

HermitianMatrix eye(int n) { return HermitianMatrix::Identity(n, n); }

}  // namespace

TEST_CASE("f_b by direct arithmetic") {
  CHECK(f_b(eig({1, 1}), 0) == doctest::Approx(2).epsilon(1e-15));
  CHECK(f_b(eig({1, 2, 4}), 8) == doctest::Approx(2.75).epsilon(1e-15));
  CHECK(f_b(eig({2, 2}), -1) == doctest::Approx(0.75).epsilon(1e-15));
  // Permutation invariance.
  CHECK(f_b(eig({4, 1, 2}), 3) == doctest::Approx(f_b(eig({1, 2, 4}), 3)).epsilon(1e-15));
  CHECK_THROWS_AS(eig({1, 0}), OperatorError);
  CHECK_THROWS_AS(eig({1, -2}), OperatorError);
}

TEST_CASE("derivatives of f_b") {
  const Spectrum s = eig({1, 2});
  const VectorXd g = grad_f_b(s, 5);
  CHECK(g[0] == doctest::Approx(-3.5));
  CHECK(g[1] == doctest::Approx(-1.5));
  const Eigen::MatrixXd H = hess_f_b(s, 5);
  // ∂_11 = 2/λ1³ + 2b/(λ1³λ2), ∂_12 = b/(λ1²λ2²).
  CHECK(H(0, 0) == doctest::Approx(2 + 5));
  CHECK(H(0, 1) == doctest::Approx(1.25));
  CHECK(H(1, 0) == doctest::Approx(1.25));
  CHECK(divided_difference(s, 5, 0, 1) == doctest::Approx(2.0));
  // Coincident eigenvalues switch to ∂_ii f − ∂_ij f.
  const Spectrum tie = eig({1, 1});
  CHECK(divided_difference(tie, 0, 0, 1) == doctest::Approx(2.0));
  const Eigen::MatrixXd Ht = hess_f_b(tie, 3);
  CHECK(divided_difference(tie, 3, 0, 1) == doctest::Approx(Ht(0, 0) - Ht(0, 1)));
}

TEST_CASE("operators on metric pairs") {
  for (int n = 1; n <= 4; ++n) {
    const MetricPair same(eye(n), eye(n));
    CHECK(F_b(same, 0.5) == doctest::Approx(n + 0.5));
    CHECK(Q_op(same) == doctest::Approx(n));
    CHECK(P_op(same) == doctest::Approx(n - 1));
  }
  const MetricPair p(eye(3), diag({1, 2, 4}));
  CHECK(Q_op(p) == doctest::Approx(1.75));
  CHECK(P_op(p) == doctest::Approx(1.5));
  const Spectrum s = spectrum(p);
  CHECK(s.lambda[0] == doctest::Approx(1));
  CHECK(s.lambda[2] == doctest::Approx(4));
  CHECK_THROWS_AS(MetricPair(eye(2), diag({1, -1})), OperatorError);
}

TEST_CASE("gradient of F_b against a central difference") {
  HermitianMatrix g(2, 2), h(2, 2), dir(2, 2);
  g << 2.0, std::complex<double>(0.3, 0.2), std::complex<double>(0.3, -0.2), 1.5;
  h << 1.0, std::complex<double>(-0.1, 0.4), std::complex<double>(-0.1, -0.4), 2.5;
  dir << 0.2, std::complex<double>(0.5, -0.7), std::complex<double>(0.5, 0.7), -0.4;
  const MetricPair pair(g, h);
  const double b = 1.3;
  const HermitianMatrix G = grad_F(pair, b);
  const double analytic = (G * dir).trace().real();
  const double d = 1e-5;
  const double fd = (F_b(MetricPair(g, h + d * dir), b) - F_b(MetricPair(g, h - d * dir), b)) / (2 * d);
  CHECK(analytic == doctest::Approx(fd).epsilon(1e-7));
  const double second =
      (F_b(MetricPair(g, h + d * 10 * dir), b) - 2 * F_b(pair, b) + F_b(MetricPair(g, h - d * 10 * dir), b)) /
      (1e-8);
  CHECK(hessian_form(pair, dir, b) == doctest::Approx(second).epsilon(1e-4));
  CHECK(hessian_form(pair, dir, b) >= 0);
}

TEST_CASE("strong convexity form, two by two oracle") {
  HermitianMatrix B(2, 2);
  B << 0, 1, 1, 0;
  // Only off-diagonal terms survive: 2·DD₁₂ + ∂₁f/λ₂ + ∂₂f/λ₁ = 4 − 1.75 − 1.5.
  CHECK(strong_convexity_form(diag({1, 2}), B, 5) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK_THROWS_AS(strong_convexity_form(eye(2) + B, B, 5), OperatorError);
}

TEST_CASE("epsilon thresholds") {
  const EpsThresholds a = eps_thresholds(1, 2, 1);
  CHECK(a.eps1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(a.eps3 == 0.125);
  CHECK(a.eps4 == 1.0);
  const EpsThresholds b = eps_thresholds(2, 3, 1);
  CHECK(b.eps4 == 0.25);
  CHECK(b.eps3 == doctest::Approx(27.0 / (2 * 125.0)).epsilon(1e-15));
}

TEST_CASE("path guard") {
  for (int n = 1; n <= 3; ++n) {
    const std::vector<Spectrum> path(5, Spectrum(VectorXd::Ones(n)));
    const PathGuardResult r = path_guard(path, n + 1, 1, 0.5 * eps_thresholds(n + 1, n, 1).eps3);
    CHECK(r.holds);
    CHECK(r.max_F0 == doctest::Approx(n));
  }
  // F_0 at the start exceeds K.
  const std::vector<Spectrum> bad(3, eig({0.1, 0.1}));
  CHECK_THROWS_AS(path_guard(bad, 3, 1, 0.01), OperatorError);
}

TEST_CASE("change of the background metric") {
  const OmegaGap zero = change_of_omega_gap(eye(2), eye(2), eye(2), 0.1, 0, 3);
  CHECK(zero.gap == 0);
  CHECK(zero.holds);
  // tr_h(g₂) − tr_h(g₁) = 2.2 − 2.
  const OmegaGap r = change_of_omega_gap(eye(2), 1.1 * eye(2), eye(2), 0, 0.1, 3);
  CHECK(r.gap == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.holds);
  CHECK(r.gap <= r.bound);
  CHECK(r.bound == doctest::Approx(3 * 0.1 / 0.9));
  CHECK_THROWS_AS(change_of_omega_gap(eye(2), 1.5 * eye(2), eye(2), 0, 0.1, 3), OperatorError);
}

TEST_CASE("F to P") {
  const MetricPair p(eye(3), diag({1, 2, 4}));
  const FToPResult zero = f_to_p_check(p, 0, 2);
  CHECK(zero.holds);
  CHECK(zero.slack == doctest::Approx(0.25));
  // h = K·g: slack = 1/K − ε/K^n.
  const double K = 2;
  const double eps = 0.9 * eps_thresholds(K, 2, 0).eps4;
  const FToPResult cap = f_to_p_check(MetricPair(eye(2), K * eye(2)), eps, K);
  CHECK(cap.holds);
  CHECK(cap.slack == doctest::Approx(1 / K - eps / (K * K)));
  CHECK_THROWS_AS(f_to_p_check(p, 2.0, 2), OperatorError);
}

TEST_CASE("the linear gap constant fails for large sigma") {
  // n = 1, g₁ = 1, g₂ = h = 1 − σ, ε = 0, K = 1: gap = σ/(1 − σ) exceeds 2σ once σ > ½.
  const double sigma = 0.6;
  const OmegaGap r = change_of_omega_gap(eye(1), (1 - sigma) * eye(1), (1 - sigma) * eye(1), 0, sigma, 1);
  CHECK(r.gap == doctest::Approx(1.5));
  CHECK(r.linear_bound == doctest::Approx(1.2));
  CHECK(r.gap > r.linear_bound);
  CHECK(r.holds);
  // The bound K·σ/(1 − σ) is attained here.
  CHECK(r.bound == doctest::Approx(1.5));
}

TEST_CASE("congruence invariance and simple derivative values") {
  HermitianMatrix g(2, 2), h(2, 2), M(2, 2);
  g << 2.0, std::complex<double>(0.3, 0.2), std::complex<double>(0.3, -0.2), 1.5;
  h << 1.0, std::complex<double>(-0.1, 0.4), std::complex<double>(-0.1, -0.4), 2.5;
  M << std::complex<double>(1, 2), 0.5, std::complex<double>(0, -1), 3.0;
  const MetricPair a(g, h), b(M.adjoint() * g * M, M.adjoint() * h * M);
  CHECK(F_b(b, 0.7) == doctest::Approx(F_b(a, 0.7)).epsilon(1e-10));
  CHECK(P_op(b) == doctest::Approx(P_op(a)).epsilon(1e-10));
  CHECK(Q_op(b) == doctest::Approx(Q_op(a)).epsilon(1e-10));

  const VectorXd grad = grad_f_b(eig({0.5, 2, 4}), 0);
  CHECK(grad[0] == doctest::Approx(-4));
  CHECK(grad[1] == doctest::Approx(-0.25));
  CHECK(grad[2] == doctest::Approx(-1.0 / 16));
  CHECK(strong_convexity_form(diag({1, 2}), HermitianMatrix::Zero(2, 2), 5) == 0);
}
