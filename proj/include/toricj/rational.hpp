#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace toricj {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<long>;

/// Parses "p/q", an integer, or a plain decimal literal ("-0.34") exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Decimal rendering rounded half-away-from-zero to `significant` digits,
/// computed in integer arithmetic (no floating point on the way).
std::string to_decimal(const Rational& q, int significant = 20);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Copies in lowest terms; gmpxx arithmetic and comparison assume canonical operands.
Rational canonical(Rational q);
QVector canonical(QVector v);

Rational dot(const ZVector& a, const QVector& b);

}  // namespace toricj
