#include "toricj/classes.hpp"

#include <algorithm>

namespace toricj {

namespace {

Rational factorial(int p) {
  Rational f = 1;
  for (int k = 2; k <= p; ++k) f *= k;
  return f;
}

}  // namespace

KahlerClassPair::KahlerClassPair(Fan fan, QVector alpha, QVector beta)
    : fan_(std::move(fan)),
      alpha_(canonical(std::move(alpha))),
      beta_(canonical(std::move(beta))),
      p_alpha_(fan_, alpha_),
      p_beta_(fan_, beta_) {
  if (p_alpha_.combinatorial_type() != p_beta_.combinatorial_type())
    throw GeometryError(GeometryErrorKind::FanMismatch, "α and β polytopes have different combinatorial types");
}

Rational mixed_volume_facet_formula(const KahlerClassPair& pair) {
  Rational v = 0;
  for (std::size_t i = 0; i < pair.fan().size(); ++i) {
    const Face& f = pair.beta().face({static_cast<int>(i)});
    v += pair.alpha_offsets()[i] * lattice_volume(pair.beta(), f);
  }
  return v;
}

IntersectionConstants intersection_constants(const KahlerClassPair& pair) {
  const int n = pair.dimension();
  IntersectionConstants k;
  const Rational vol_beta = lattice_volume(pair.beta(), pair.beta().full_face());
  const Rational vol_alpha = lattice_volume(pair.alpha(), pair.alpha().full_face());
  k.mixed_volume = mixed_first_derivative(pair.fan(), pair.beta_offsets(), pair.alpha_offsets(), {});
  k.beta_n = factorial(n) * vol_beta;
  k.alpha_n = factorial(n) * vol_alpha;
  k.alpha_beta = factorial(n - 1) * k.mixed_volume;
  k.c_X = k.mixed_volume / vol_beta;
  const Rational alpha_beta_facets = factorial(n - 1) * mixed_volume_facet_formula(pair);
  k.c_X_facet_formula = Rational(n) * alpha_beta_facets / k.beta_n;
  return k;
}

Rational b_from_c(const KahlerClassPair& pair, const Rational& c) {
  const auto k = intersection_constants(pair);
  if (k.alpha_n <= 0) throw GeometryError(GeometryErrorKind::InvalidPolytope, "α^n must be positive");
  return (canonical(c) * k.beta_n - Rational(pair.dimension()) * k.alpha_beta) / k.alpha_n;
}

AffineFunction HamiltonianSpec::centered() const { return AffineFunction{a_v, -mean}; }

HamiltonianSpec hamiltonian_spec(const QVector& raw_a_v, const KahlerClassPair& pair) {
  const QVector a_v = canonical(raw_a_v);
  if (static_cast<int>(a_v.size()) != pair.dimension())
    throw GeometryError(GeometryErrorKind::FanMismatch, "a_v has the wrong dimension");
  const Face& full = pair.beta().full_face();
  const Rational integral = integrate_affine(pair.beta(), full, AffineFunction{a_v, 0});
  return HamiltonianSpec{a_v, integral / lattice_volume(pair.beta(), full)};
}

ThetaExtrema theta_extrema(const HamiltonianSpec& ham, const KahlerClassPair& pair) {
  const AffineFunction a = ham.centered();
  ThetaExtrema e;
  bool first = true;
  for (const auto& v : pair.beta().vertices()) {
    Rational val = a(v.point);
    if (first || val < e.min) e.min = val;
    if (first || val > e.max) e.max = val;
    first = false;
  }
  e.c_theta = std::max(abs(e.min), abs(e.max));
  e.m_X = intersection_constants(pair).c_X + e.min;
  return e;
}

Rational face_shift_I_Y(const HamiltonianSpec& ham, const KahlerClassPair& pair, const FacetSet& face) {
  const Face& f = pair.beta().face(face);
  if (f.dimension < 1) throw GeometryError(GeometryErrorKind::DegenerateFace, "I_Y needs a face of positive dimension");
  return integrate_affine(pair.beta(), f, ham.centered()) / lattice_volume(pair.beta(), f);
}

ContinuityParameters continuity_parameters(const KahlerClassPair& pair, const HamiltonianSpec& ham,
                                           const FacetSet& face, const Rational& raw_t) {
  const Rational t = canonical(raw_t);
  const Face& fb = pair.beta().face(face);
  const int p = fb.dimension;
  if (p < 1) throw GeometryError(GeometryErrorKind::DegenerateFace, "continuity path needs p >= 1");
  const Face& fa = pair.alpha().face(face);
  ContinuityParameters cp;
  cp.beta_p = factorial(p) * lattice_volume(pair.beta(), fb);
  cp.alpha_p = factorial(p) * lattice_volume(pair.alpha(), fa);
  cp.alpha_beta_p =
      factorial(p - 1) * mixed_first_derivative(pair.fan(), pair.beta_offsets(), pair.alpha_offsets(), face);
  if (cp.beta_p <= 0 || cp.alpha_p <= 0)
    throw GeometryError(GeometryErrorKind::DegenerateFace, "face volumes must be positive");
  cp.I_Y = face_shift_I_Y(ham, pair, face);
  const Rational c_X = intersection_constants(pair).c_X;
  cp.c_t = c_X * (t + 1) + cp.I_Y;
  cp.b_t = (cp.c_t * cp.beta_p - Rational(p) * cp.alpha_beta_p) / cp.alpha_p;
  cp.b_0 = ((c_X + cp.I_Y) * cp.beta_p - Rational(p) * cp.alpha_beta_p) / cp.alpha_p;
  if (cp.b_t - cp.b_0 != c_X * cp.beta_p / cp.alpha_p * t)
    throw std::logic_error("continuity path: b_t is not affine in t");
  return cp;
}

}  // namespace toricj
