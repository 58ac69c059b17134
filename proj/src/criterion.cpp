#include "toricj/criterion.hpp"

namespace toricj {

FaceValue face_value(const KahlerClassPair& pair, const HamiltonianSpec& ham, const FacetSet& face) {
  const Face& fb = pair.beta().face(face);
  const int n = pair.dimension();
  if (fb.dimension < 1 || fb.dimension > n - 1)
    throw GeometryError(GeometryErrorKind::DegenerateFace, "face values are defined for 1 <= p <= n-1");
  FaceValue fv;
  fv.face = fb.facets;
  fv.dimension = fb.dimension;
  fv.volume_term = intersection_constants(pair).c_X * lattice_volume(pair.beta(), fb);
  fv.theta_term = integrate_affine(pair.beta(), fb, ham.centered());
  fv.mixed_term = mixed_first_derivative(pair.fan(), pair.beta_offsets(), pair.alpha_offsets(), fb.facets);
  fv.scale = 1;
  for (int k = 2; k <= fb.dimension; ++k) fv.scale *= k;
  fv.value = fv.recompute();
  return fv;
}

const FaceValue* CriterionReport::min_face() const {
  const FaceValue* best = nullptr;
  for (const auto& f : faces)
    if (!best || f.value < best->value) best = &f;
  return best;
}

CriterionReport check(const KahlerClassPair& pair, const HamiltonianSpec& ham) {
  CriterionReport r;
  const auto ext = theta_extrema(ham, pair);
  r.c_X = intersection_constants(pair).c_X;
  r.m_X = ext.m_X;
  r.m_X_positive = r.m_X > 0;
  bool faces_ok = true;
  for (const auto& f : pair.beta().faces()) {
    if (f.dimension < 1 || f.dimension > pair.dimension() - 1) continue;
    r.faces.push_back(face_value(pair, ham, f.facets));
    if (!r.faces.back().positive() && faces_ok) {
      faces_ok = false;
      r.witness = f.facets;
    }
  }
  r.pass = r.m_X_positive && faces_ok;
  return r;
}

ScanResult threshold_scan(const ProblemFamily& family, const std::vector<Rational>& knobs) {
  ScanResult out;
  for (const auto& k : knobs) {
    bool pass = false;
    try {
      auto [pair, ham] = family(k);
      pass = check(pair, ham).pass;
    } catch (const std::exception& e) {
      throw InvalidFamilyMember("family member at knob " + to_string(k) + " is invalid: " + e.what());
    }
    if (!out.entries.empty() && !out.bracket && out.entries.back().pass != pass)
      out.bracket = std::make_pair(out.entries.back().knob, k);
    out.entries.push_back({k, pass});
  }
  return out;
}

ScanResult threshold_scan(const ProblemFamily& family, const Rational& lo, const Rational& hi, int steps) {
  std::vector<Rational> knobs;
  if (steps <= 0) {
    knobs.push_back(lo);
  } else {
    for (int i = 0; i <= steps; ++i) knobs.push_back(lo + (hi - lo) * Rational(Integer(i), Integer(steps)));
  }
  for (auto& k : knobs) k.canonicalize();
  return threshold_scan(family, knobs);
}

}  // namespace toricj
