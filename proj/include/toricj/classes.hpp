#pragma once

// Kähler classes on a shared fan, their intersection numbers, and the
// Hamiltonian as a centered affine function on the moment polytope.
//
// Normalization: ∫_Y χ^p = p!·Vol_L(F) for the face F of P_β corresponding to Y,
// so every constant below is an exact rational polytope quantity.

#include "toricj/toric_core.hpp"

namespace toricj {

class KahlerClassPair {
 public:
  /// Throws GeometryError (FanMismatch) unless both offset vectors give valid
  /// Delzant polytopes of the same combinatorial type on `fan`.
  KahlerClassPair(Fan fan, QVector alpha, QVector beta);

  int dimension() const { return fan_.dimension(); }
  const Fan& fan() const { return fan_; }
  const QVector& alpha_offsets() const { return alpha_; }
  const QVector& beta_offsets() const { return beta_; }
  const DelzantPolytope& alpha() const { return p_alpha_; }
  const DelzantPolytope& beta() const { return p_beta_; }

 private:
  Fan fan_;
  QVector alpha_, beta_;
  DelzantPolytope p_alpha_, p_beta_;
};

struct IntersectionConstants {
  Rational c_X;
  Rational alpha_n;       ///< α^n
  Rational beta_n;        ///< β^n
  Rational alpha_beta;    ///< α·β^{n-1}
  Rational mixed_volume;  ///< V₁ of the full face
  /// c_X computed a second way: n·(α·β^{n-1})/β^n with α·β^{n-1} from the
  /// facet formula Σ_i λ_α,i·Vol_L(F_i).
  Rational c_X_facet_formula;
};

IntersectionConstants intersection_constants(const KahlerClassPair& pair);

/// V₁ = Σ_i λ_α,i · Vol_L(facet_i of P_β); independent of the interpolation route.
Rational mixed_volume_facet_formula(const KahlerClassPair& pair);

/// b = (c·β^n − n·α·β^{n-1}) / α^n.
Rational b_from_c(const KahlerClassPair& pair, const Rational& c);

struct HamiltonianSpec {
  QVector a_v;
  Rational mean;  ///< average of <a_v, y> over P_β
  /// A_c(y) = <a_v, y> − mean.
  AffineFunction centered() const;
};

HamiltonianSpec hamiltonian_spec(const QVector& a_v, const KahlerClassPair& pair);

struct ThetaExtrema {
  Rational min, max;
  Rational c_theta;  ///< max(|min|, |max|)
  Rational m_X;      ///< c_X + min
};

ThetaExtrema theta_extrema(const HamiltonianSpec& ham, const KahlerClassPair& pair);

/// Mean of A_c over the β-face: (1/β^p) ∫_Y θ χ̂^p.
Rational face_shift_I_Y(const HamiltonianSpec& ham, const KahlerClassPair& pair, const FacetSet& face);

struct ContinuityParameters {
  Rational c_t, b_t, b_0;
  Rational beta_p, alpha_p, alpha_beta_p;  ///< β^p, α^p, α·β^{p-1} restricted to the face
  Rational I_Y;
};

ContinuityParameters continuity_parameters(const KahlerClassPair& pair, const HamiltonianSpec& ham,
                                           const FacetSet& face, const Rational& t);

}  // namespace toricj
