#include "toricj/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace toricj::lattice {

Rational determinant(QMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

int rank(QMatrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::optional<QVector> solve(QMatrix a, QVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

namespace {

ZMatrix identity(std::size_t n) {
  ZMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Replace columns (i, j) of m by (x·ci + y·cj, u·ci + v·cj).
void combine_columns(ZMatrix& m, std::size_t i, std::size_t j, const Integer& x, const Integer& y,
                     const Integer& u, const Integer& v) {
  for (auto& row : m) {
    Integer ci = row[i], cj = row[j];
    row[i] = x * ci + y * cj;
    row[j] = u * ci + v * cj;
  }
}

}  // namespace

ZMatrix column_hermite(ZMatrix a, ZMatrix* transform) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  ZMatrix v = identity(cols);
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows && col < cols; ++r) {
    for (std::size_t j = col + 1; j < cols; ++j) {
      if (a[r][j] == 0) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[r][col].get_mpz_t(),
                 a[r][j].get_mpz_t());
      Integer u = -(a[r][j] / g), w = a[r][col] / g;
      combine_columns(a, col, j, x, y, u, w);
      combine_columns(v, col, j, x, y, u, w);
    }
    if (a[r][col] != 0) {
      if (a[r][col] < 0) {
        for (auto& row : a) row[col] = -row[col];
        for (auto& row : v) row[col] = -row[col];
      }
      ++col;
    }
  }
  if (transform) *transform = std::move(v);
  return a;
}

ZMatrix transpose(const ZMatrix& m) {
  if (m.empty()) return {};
  ZMatrix t(m[0].size(), std::vector<Integer>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

ZMatrix hermite_normal_form(ZMatrix a) {
  // Row HNF of a is the transpose of the column reduction of aᵀ, followed by
  // reduction of the entries above each pivot.
  ZMatrix h = transpose(column_hermite(transpose(a)));
  const std::size_t rows = h.size();
  const std::size_t cols = rows ? h[0].size() : 0;
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (pivot_col < cols && h[r][pivot_col] == 0) ++pivot_col;
    if (pivot_col == cols) break;
    const Integer p = h[r][pivot_col];
    for (std::size_t above = 0; above < r; ++above) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h[above][pivot_col].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) h[above][k] -= q * h[r][k];
    }
  }
  return h;
}

ZMatrix integer_kernel(const ZMatrix& a, std::size_t cols) {
  if (a.empty()) {
    ZMatrix id = identity(cols);
    return id;
  }
  ZMatrix v;
  ZMatrix h = column_hermite(a, &v);
  std::size_t first_zero = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    bool zero = std::all_of(h.begin(), h.end(), [&](const auto& row) { return row[c] == 0; });
    if (!zero) first_zero = c + 1;
  }
  ZMatrix kernel(cols, std::vector<Integer>());
  for (std::size_t r = 0; r < cols; ++r)
    for (std::size_t c = first_zero; c < cols; ++c) kernel[r].push_back(v[r][c]);
  return kernel;
}

Integer gcd_of(const std::vector<Integer>& values) {
  Integer g = 0;
  for (const auto& x : values) {
    Integer t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  return g;
}

bool is_saturated_basis(const ZMatrix& basis) {
  const std::size_t n = basis.size();
  if (n == 0) return true;
  const std::size_t p = basis[0].size();
  if (p == 0) return true;
  if (p > n) return false;
  std::vector<Integer> minors;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(p), 1);
  std::sort(pick.begin(), pick.end());
  do {
    QMatrix sub;
    for (std::size_t r = 0; r < n; ++r) {
      if (!pick[r]) continue;
      std::vector<Rational> row;
      for (std::size_t c = 0; c < p; ++c) row.emplace_back(basis[r][c]);
      sub.push_back(std::move(row));
    }
    minors.push_back(determinant(sub).get_num());
  } while (std::next_permutation(pick.begin(), pick.end()));
  return gcd_of(minors) == 1;
}

}  // namespace toricj::lattice
