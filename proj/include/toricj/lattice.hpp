#pragma once

#include "toricj/rational.hpp"

#include <optional>
#include <vector>

namespace toricj::lattice {

/// Row-major dense matrices over Z and Q. Small (n <= 3) by construction.
using ZMatrix = std::vector<std::vector<Integer>>;
using QMatrix = std::vector<std::vector<Rational>>;

Rational determinant(QMatrix a);
int rank(QMatrix a);

/// Unique solution of the square system a·x = b, or nullopt when singular.
std::optional<QVector> solve(QMatrix a, QVector b);

/// Column-style Hermite reduction: returns H = A·V with V unimodular and H in
/// lower column-echelon form with positive pivots. `transform` receives V.
ZMatrix column_hermite(ZMatrix a, ZMatrix* transform = nullptr);

/// Row-style Hermite normal form (upper echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot)).
ZMatrix hermite_normal_form(ZMatrix a);

/// Basis of {x in Z^n : a·x = 0}, returned as columns of an n×k matrix.
/// `cols` gives n when `a` has no rows.
ZMatrix integer_kernel(const ZMatrix& a, std::size_t cols);

/// True when the columns of `basis` span a saturated sublattice, i.e. the gcd of
/// the maximal minors is 1.
bool is_saturated_basis(const ZMatrix& basis);

Integer gcd_of(const std::vector<Integer>& values);

ZMatrix transpose(const ZMatrix& m);

}  // namespace toricj::lattice
