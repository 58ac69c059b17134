#include "toricj/classes.hpp"
#include "toricj/criterion.hpp"

#include <doctest.h>

#include <random>

using namespace toricj;

namespace {

const Fan kP1{{{1}, {-1}}};
const Fan kP2{{{1, 0}, {0, 1}, {-1, -1}}};
const Fan kP1xP1{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
const Fan kCube{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};

Rational q(const char* s) { return parse_rational(s); }

KahlerClassPair p2_pair(const Rational& a) { return KahlerClassPair(kP2, QVector{0, 0, a}, QVector{0, 0, 1}); }

}  // namespace

TEST_CASE("intersection constants on projective line and plane") {
  const KahlerClassPair p1(kP1, QVector{0, 2}, QVector{0, 1});
  const auto c1 = intersection_constants(p1);
  CHECK(c1.c_X == 2);
  CHECK(c1.c_X_facet_formula == 2);
  CHECK(b_from_c(p1, 3) == q("1/2"));

  const KahlerClassPair p2 = p2_pair(1);
  const auto c2 = intersection_constants(p2);
  CHECK(c2.c_X == 2);
  CHECK(c2.alpha_n == 1);
  CHECK(c2.beta_n == 1);
  CHECK(c2.alpha_beta == 1);
  CHECK(b_from_c(p2, 4) == 2);
  // b vanishes at c = c_X by definition.
  CHECK(b_from_c(p2, c2.c_X) == 0);
}

TEST_CASE("c_X agrees with the facet formula for random offsets") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 40), den(1, 12);
  // Left unreduced on purpose: inputs need not be in lowest terms.
  auto rnd = [&] { return Rational(Integer(num(rng)), Integer(den(rng))); };
  for (const Fan* fan : {&kP2, &kP1xP1, &kCube}) {
    const int n = fan->dimension();
    for (int trial = 0; trial < 10; ++trial) {
      QVector beta(fan->size(), Rational(0)), alpha(fan->size(), Rational(0));
      for (std::size_t i = static_cast<std::size_t>(n); i < fan->size(); ++i) {
        beta[i] = rnd();
        alpha[i] = rnd();
      }
      const KahlerClassPair pair(*fan, alpha, beta);
      const auto c = intersection_constants(pair);
      CHECK(c.c_X == c.c_X_facet_formula);
      CHECK(c.mixed_volume == mixed_volume_facet_formula(pair));
      const KahlerClassPair same(*fan, beta, beta);
      CHECK(intersection_constants(same).c_X == n);
    }
  }
}

TEST_CASE("a degenerate class is rejected") {
  CHECK_THROWS_AS(KahlerClassPair(kP1xP1, QVector{0, 0, 0, 1}, QVector{0, 0, 1, 1}), GeometryError);
}

TEST_CASE("Hamiltonian normalization and theta extrema") {
  const KahlerClassPair p2 = p2_pair(1);
  const HamiltonianSpec ham = hamiltonian_spec(QVector{1, 0}, p2);
  CHECK(ham.mean == q("1/3"));
  const DelzantPolytope& beta = p2.beta();
  CHECK(integrate_affine(beta, beta.full_face(), ham.centered()) == 0);
  const ThetaExtrema th = theta_extrema(ham, p2);
  CHECK(th.min == q("-1/3"));
  CHECK(th.max == q("2/3"));
  CHECK(th.c_theta == q("2/3"));
  CHECK(th.m_X == q("5/3"));

  CHECK(face_shift_I_Y(ham, p2, FacetSet{0}) == q("-1/3"));
  CHECK(face_shift_I_Y(ham, p2, FacetSet{1}) == q("1/6"));
  CHECK(face_shift_I_Y(ham, p2, {}) == 0);
}

TEST_CASE("continuity path constants") {
  const KahlerClassPair p2 = p2_pair(1);
  const HamiltonianSpec ham = hamiltonian_spec(QVector{1, 0}, p2);
  const auto cp0 = continuity_parameters(p2, ham, {}, 0);
  CHECK(cp0.c_t == 2);
  CHECK(cp0.b_0 == 0);
  CHECK(cp0.b_t == cp0.b_0);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(0, 50), den(1, 17);
  const KahlerClassPair pair(kP2, QVector{0, 0, q("7/3")}, QVector{0, 0, q("3/2")});
  const HamiltonianSpec h2 = hamiltonian_spec(QVector{q("1/2"), q("-2")}, pair);
  for (int i = 0; i < 20; ++i) {
    const Rational t = canonical(Rational(Integer(num(rng)), Integer(den(rng))));
    for (const FacetSet& face : {FacetSet{}, FacetSet{0}, FacetSet{2}}) {
      const auto cp = continuity_parameters(pair, h2, face, t);
      CHECK(cp.b_t - cp.b_0 == intersection_constants(pair).c_X * cp.beta_p / cp.alpha_p * t);
      CHECK(cp.c_t == intersection_constants(pair).c_X * (t + 1) + cp.I_Y);
    }
  }
}

TEST_CASE("criterion on the projective plane family") {
  const HamiltonianSpec ham1 = hamiltonian_spec(QVector{1, 0}, p2_pair(1));
  const auto pass = check(p2_pair(1), ham1);
  CHECK(pass.pass);
  CHECK(pass.m_X == q("5/3"));
  REQUIRE(pass.min_face());
  CHECK(pass.min_face()->value == q("2/3"));
  CHECK(pass.min_face()->face == FacetSet{0});
  CHECK(pass.faces.size() == 3);

  struct Case {
    const char* a;
    bool pass;
    const char* value;
  };
  for (const Case& c : {Case{"3/10", false, "-1/30"}, Case{"33/100", false, "-1/300"}, Case{"1/3", false, "0"},
                        Case{"34/100", true, "1/150"}}) {
    const KahlerClassPair pair = p2_pair(q(c.a));
    const auto r = check(pair, hamiltonian_spec(QVector{1, 0}, pair));
    CAPTURE(c.a);
    CHECK(r.pass == c.pass);
    REQUIRE(r.min_face());
    CHECK(r.min_face()->value == q(c.value));
    CHECK(r.min_face()->face == FacetSet{0});
    if (!c.pass) {
      REQUIRE(r.witness);
      CHECK(*r.witness == FacetSet{0});
    }
    for (const auto& f : r.faces) CHECK(f.value == f.recompute());
  }
}

TEST_CASE("criterion with a trivial Hamiltonian") {
  // a_v = 0 reduces to the J-equation condition; α = β always passes.
  for (const Fan* fan : {&kP2, &kP1xP1, &kCube}) {
    const int n = fan->dimension();
    QVector beta(fan->size(), Rational(0));
    for (std::size_t i = static_cast<std::size_t>(n); i < fan->size(); ++i) beta[i] = 2;
    const KahlerClassPair pair(*fan, beta, beta);
    const auto r = check(pair, hamiltonian_spec(QVector(static_cast<std::size_t>(n), Rational(0)), pair));
    CHECK(r.pass);
    CHECK(r.c_X == n);
  }
}

TEST_CASE("threshold scan brackets the transition at one third") {
  const ProblemFamily fam = [](const Rational& a) {
    KahlerClassPair pair = p2_pair(a);
    HamiltonianSpec ham = hamiltonian_spec(QVector{1, 0}, pair);
    return std::make_pair(std::move(pair), std::move(ham));
  };
  const ScanResult r = threshold_scan(fam, q("3/10"), q("1/2"), 20);
  REQUIRE(r.bracket);
  CHECK(r.bracket->first <= q("1/3"));
  CHECK(r.bracket->second > q("1/3"));
  CHECK_FALSE(r.entries.front().pass);
  CHECK(r.entries.back().pass);
  for (const auto& e : r.entries) CHECK(e.pass == (e.knob > q("1/3")));

  const ProblemFamily broken = [](const Rational& a) -> std::pair<KahlerClassPair, HamiltonianSpec> {
    if (a > 1) throw GeometryError(GeometryErrorKind::InvalidPolytope, "boom");
    KahlerClassPair pair = p2_pair(a);
    HamiltonianSpec ham = hamiltonian_spec(QVector{1, 0}, pair);
    return {std::move(pair), std::move(ham)};
  };
  CHECK_THROWS_AS(threshold_scan(broken, std::vector<Rational>{1, 2}), InvalidFamilyMember);
}
