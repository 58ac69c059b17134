#include "toricj/problem.hpp"

#include <stdexcept>

namespace toricj {

ProblemSpec make_problem(const KahlerClassPair& pair, const QVector& a_v, const std::optional<Rational>& c) {
  const int n = pair.dimension();
  if (n < 1 || n > 2) throw std::invalid_argument("the dual solver supports n = 1 and n = 2 only");
  ProblemSpec p{pair, hamiltonian_spec(a_v, pair), c ? canonical(*c) : intersection_constants(pair).c_X, 0, 0.0, 0.0, 0.0, {}};
  p.b = b_from_c(pair, p.c);
  p.c_value = to_double(p.c);
  p.b_value = to_double(p.b);
  p.mean_value = to_double(p.ham.mean);
  p.a_v.resize(n);
  for (int j = 0; j < n; ++j) p.a_v[j] = to_double(a_v[static_cast<std::size_t>(j)]);
  return p;
}

}  // namespace toricj
