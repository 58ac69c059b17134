#include "toricj/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace toricj {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const std::string original(text);
  if (s.empty()) throw std::invalid_argument("empty rational");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + original + "'");
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + original + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal '" + original + "'");
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    Integer scale = pow10(frac.size());
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + original + "'");
    value = Rational(Integer(std::string(s)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

QVector canonical(QVector v) {
  for (auto& q : v) q.canonicalize();
  return v;
}

std::string to_decimal(const Rational& q, int significant) {
  if (significant < 1) significant = 1;
  if (q == 0) return "0";
  const bool negative = q < 0;
  Rational a = abs(q);

  // exponent e with 10^e <= a < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  auto scaled_pow = [](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                  : Rational(Integer(1), pow10(static_cast<unsigned long>(-k)));
  };
  while (a >= scaled_pow(e + 1)) ++e;
  while (a < scaled_pow(e)) --e;

  auto round_at = [&](long exponent) {
    Rational s = a * scaled_pow(significant - 1 - exponent);
    Integer num = s.get_num(), den = s.get_den();
    Integer quot = num / den;  // truncation, both positive
    Integer rem = num - quot * den;
    if (2 * rem >= den) quot += 1;
    return quot;
  };
  Integer digits_int = round_at(e);
  if (digits_int >= pow10(static_cast<unsigned long>(significant))) {
    ++e;
    digits_int = round_at(e);
  }
  std::string digits = digits_int.get_str();

  std::string out;
  if (e >= -6 && e < significant) {
    if (e >= 0) {
      out = digits.substr(0, static_cast<std::size_t>(e + 1));
      std::string frac = digits.substr(static_cast<std::size_t>(e + 1));
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    } else {
      std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      out = "0." + frac;
    }
  } else {
    std::string frac = digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = digits.substr(0, 1) + (frac.empty() ? "" : "." + frac) + "e" + std::to_string(e);
  }
  return negative ? "-" + out : out;
}

Rational dot(const ZVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += Rational(a[i]) * b[i];
  return r;
}

}  // namespace toricj
