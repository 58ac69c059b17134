#pragma once

// Exact decision procedure for solvability of the modified J-equation on a
// compact toric manifold: m_X > 0 and strict positivity of
//   ∫_Y ((c_X + θ) χ^p − p ω∧χ^{p-1}) = p!·[c_X·Vol_L(F_β) + ∫_{F_β} A_c − V₁(F)]
// over every face of dimension 1..n-1.

#include "toricj/classes.hpp"

#include <functional>
#include <optional>

namespace toricj {

struct FaceValue {
  FacetSet face;
  int dimension = 0;
  Rational volume_term;  ///< c_X·Vol_L(F_β)
  Rational theta_term;   ///< ∫_{F_β} A_c dσ_L
  Rational mixed_term;   ///< V₁(F)
  Rational scale;        ///< p!
  Rational value;

  Rational recompute() const { return scale * (volume_term + theta_term - mixed_term); }
  bool positive() const { return value > 0; }
};

FaceValue face_value(const KahlerClassPair& pair, const HamiltonianSpec& ham, const FacetSet& face);

struct CriterionReport {
  Rational c_X;
  Rational m_X;
  bool m_X_positive = false;
  std::vector<FaceValue> faces;  ///< dimensions 1..n-1, deterministic order
  bool pass = false;
  /// First failing face when the face condition fails; empty when only m_X fails.
  std::optional<FacetSet> witness;

  const FaceValue* min_face() const;
};

CriterionReport check(const KahlerClassPair& pair, const HamiltonianSpec& ham);

struct ScanEntry {
  Rational knob;
  bool pass = false;
};

struct ScanResult {
  std::vector<ScanEntry> entries;
  /// First adjacent pair of knobs whose verdicts differ.
  std::optional<std::pair<Rational, Rational>> bracket;
};

/// A family of problems indexed by one rational knob. Throwing from the
/// callback (e.g. an invalid member) is reported as InvalidFamilyMember.
using ProblemFamily = std::function<std::pair<KahlerClassPair, HamiltonianSpec>(const Rational&)>;

class InvalidFamilyMember : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScanResult threshold_scan(const ProblemFamily& family, const std::vector<Rational>& knobs);
ScanResult threshold_scan(const ProblemFamily& family, const Rational& lo, const Rational& hi, int steps);

}  // namespace toricj
