#include "toricj/regmax.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace toricj {

namespace {

double bump(double h) { return std::abs(h) < 1.0 ? std::exp(-1.0 / (1.0 - h * h)) : 0.0; }

// One discrete variable: distinct values ascending with their probabilities.
struct Atoms {
  std::vector<double> value, prob;
};

std::vector<Atoms> build_atoms(const std::vector<double>& t, const std::vector<double>& eta,
                               const RegMaxKernel& k) {
  if (t.size() != eta.size()) throw std::invalid_argument("t and eta differ in length");
  if (t.empty()) throw std::invalid_argument("reg_max needs at least one argument");
  if (t.size() > static_cast<std::size_t>(kRegMaxMaxDimension))
    throw DimensionTooLarge("reg_max supports N <= 3, got N = " + std::to_string(t.size()));
  std::vector<Atoms> out;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(eta[j] > 0.0)) throw std::invalid_argument("eta must be positive");
    Atoms a;
    for (int q = 0; q < k.size(); ++q) {
      const double v = t[j] + eta[j] * k.nodes()[static_cast<std::size_t>(q)];
      if (!a.value.empty() && a.value.back() == v) {
        a.prob.back() += k.weights()[static_cast<std::size_t>(q)];
      } else {
        a.value.push_back(v);
        a.prob.push_back(k.weights()[static_cast<std::size_t>(q)]);
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

// Calls visit(v, p, below) for every distinct value v across all variables,
// ascending; p[j] = P(X_j = v), below[j] = P(X_j < v).
template <class Visit>
void sweep(const std::vector<Atoms>& vars, Visit visit) {
  const std::size_t n = vars.size();
  std::vector<std::size_t> pos(n, 0);
  std::vector<double> below(n, 0.0), p(n, 0.0);
  while (true) {
    double v = INFINITY;
    for (std::size_t j = 0; j < n; ++j)
      if (pos[j] < vars[j].value.size()) v = std::min(v, vars[j].value[pos[j]]);
    if (v == INFINITY) break;
    for (std::size_t j = 0; j < n; ++j)
      p[j] = (pos[j] < vars[j].value.size() && vars[j].value[pos[j]] == v) ? vars[j].prob[pos[j]] : 0.0;
    visit(v, p, below);
    for (std::size_t j = 0; j < n; ++j)
      if (p[j] != 0.0 || (pos[j] < vars[j].value.size() && vars[j].value[pos[j]] == v)) {
        below[j] += p[j];
        ++pos[j];
      }
  }
}

}  // namespace

RegMaxKernel::RegMaxKernel(int nodes) {
  if (nodes <= 0 || nodes % 2 != 0) throw std::invalid_argument("kernel node count must be even and positive");
  const auto zeros = boost::math::legendre_p_zeros<double>(nodes);
  std::vector<double> x;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) x.push_back(-*it);
  for (double z : zeros) x.push_back(z);
  nodes_ = x;
  std::vector<double> w;
  double total = 0.0;
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime(nodes, xi);
    const double gl = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w.push_back(gl * bump(xi));
    total += w.back();
  }
  // Symmetrize so that the first moment vanishes to rounding.
  for (std::size_t i = 0; i < w.size() / 2; ++i) {
    const double avg = 0.5 * (w[i] + w[w.size() - 1 - i]);
    w[i] = w[w.size() - 1 - i] = avg;
  }
  for (auto& wi : w) wi /= total;
  weights_ = w;
  scale_ = 1.0 / total;
}

double RegMaxKernel::theta(double h) const { return bump(h) * scale_; }

double RegMaxKernel::mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double RegMaxKernel::first_moment() const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * nodes_[i];
  return s;
}

const RegMaxKernel& default_regmax_kernel() {
  static const RegMaxKernel kernel(64);
  return kernel;
}

double reg_max(const std::vector<double>& t, const std::vector<double>& eta, const RegMaxKernel& kernel) {
  const auto vars = build_atoms(t, eta, kernel);
  double value = 0.0;
  sweep(vars, [&](double v, const std::vector<double>& p, const std::vector<double>& below) {
    double at_or_below = 1.0, strictly_below = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      at_or_below *= below[j] + p[j];
      strictly_below *= below[j];
    }
    value += v * (at_or_below - strictly_below);
  });
  return value;
}

std::vector<double> reg_max_grad(const std::vector<double>& t, const std::vector<double>& eta,
                                 const RegMaxKernel& kernel) {
  const auto vars = build_atoms(t, eta, kernel);
  const std::size_t n = vars.size();
  std::vector<double> grad(n, 0.0);
  sweep(vars, [&](double, const std::vector<double>& p, const std::vector<double>& below) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] == 0.0) continue;
      // Sum over the set S of other coordinates tied with j at this value.
      double share = 0.0;
      const unsigned others = static_cast<unsigned>(n - 1);
      for (unsigned mask = 0; mask < (1u << others); ++mask) {
        double term = 1.0;
        int tied = 0;
        unsigned bit = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j) continue;
          if (mask & (1u << bit)) {
            term *= p[i];
            ++tied;
          } else {
            term *= below[i];
          }
          ++bit;
        }
        share += term / (tied + 1);
      }
      grad[j] += p[j] * share;
    }
  });
  return grad;
}

}  // namespace toricj
