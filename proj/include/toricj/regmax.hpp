#pragma once

// Regularized maximum
//   M_η(t) = ∫ max_j (t_j + h_j) Π_j θ(h_j/η_j)/η_j dh
// with θ ∝ exp(−1/(1−h²)) on (−1,1). The integral is replaced by a tensor
// Gauss–Legendre rule; the tensor sum is evaluated exactly as the expected
// maximum of independent discrete variables, so the cost is linear in N·nodes.

#include <stdexcept>
#include <vector>

namespace toricj {

class DimensionTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RegMaxKernel {
 public:
  /// `nodes` must be even and positive.
  explicit RegMaxKernel(int nodes = 64);

  int size() const { return static_cast<int>(nodes_.size()); }
  /// Gauss–Legendre nodes on [−1,1], ascending.
  const std::vector<double>& nodes() const { return nodes_; }
  /// Quadrature weights times θ at the nodes; they sum to one.
  const std::vector<double>& weights() const { return weights_; }

  /// Normalized kernel θ(h); zero outside (−1,1).
  double theta(double h) const;

  double mass() const;         ///< Σ weights (≈ ∫θ)
  double first_moment() const; ///< Σ weights·node (≈ ∫hθ)

 private:
  std::vector<double> nodes_, weights_;
  double scale_ = 1.0;
};

const RegMaxKernel& default_regmax_kernel();

constexpr int kRegMaxMaxDimension = 3;

/// Throws DimensionTooLarge for N > 3 and std::invalid_argument for
/// non-positive η or mismatched sizes.
double reg_max(const std::vector<double>& t, const std::vector<double>& eta,
               const RegMaxKernel& kernel = default_regmax_kernel());

/// ∂M_η/∂t_j, the probability that coordinate j attains the maximum (exact
/// ties split evenly).
std::vector<double> reg_max_grad(const std::vector<double>& t, const std::vector<double>& eta,
                                 const RegMaxKernel& kernel = default_regmax_kernel());

}  // namespace toricj
