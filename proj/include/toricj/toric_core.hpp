#pragma once

// Exact rational geometry of Delzant polytopes: validation, the face lattice,
// lattice-normalized volumes, affine integrals over faces and first mixed-volume
// derivatives taken through offset summation on a shared normal fan.

#include "toricj/lattice.hpp"
#include "toricj/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace toricj {

enum class GeometryErrorKind {
  InvalidFacet,
  UnboundedPolytope,
  NotFullDimensional,
  NonSimpleVertex,
  NonUnimodularVertex,
  RedundantFacet,
  InvalidPolytope,
  DegenerateFace,
  ChartFailure,
  FanMismatch,
  DegreeOverflow,
  UnknownFace,
};

std::string to_string(GeometryErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(GeometryErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GeometryErrorKind kind() const noexcept { return kind_; }

 private:
  GeometryErrorKind kind_;
};

/// {y : <normal, y> + offset >= 0}, normal primitive and inward.
struct Facet {
  ZVector normal;
  Rational offset;
};

/// Facet index sets identify faces; kept sorted.
using FacetSet = std::vector<int>;

/// Primitive inward normals shared by every class on one toric manifold.
struct Fan {
  std::vector<ZVector> normals;
  int dimension() const { return normals.empty() ? 0 : static_cast<int>(normals[0].size()); }
  std::size_t size() const { return normals.size(); }
};

struct VertexRecord {
  QVector point;
  FacetSet facets;
  Rational determinant;  ///< of the first n tight normals, as rows
};

struct ValidationReport {
  bool valid = false;
  GeometryErrorKind error = GeometryErrorKind::InvalidPolytope;
  std::string message;
  std::vector<VertexRecord> vertices;
  /// Facet set of the offending vertex for NonSimple/NonUnimodular verdicts.
  FacetSet witness;
};

ValidationReport validate_delzant(const Fan& fan, const QVector& offsets);
ValidationReport validate_delzant(const std::vector<Facet>& facets);

struct Face {
  FacetSet facets;
  int dimension = 0;
  std::vector<QVector> vertices;
};

class DelzantPolytope {
 public:
  /// Validates and builds the face lattice; throws GeometryError when invalid.
  DelzantPolytope(Fan fan, QVector offsets);
  explicit DelzantPolytope(const std::vector<Facet>& facets);

  int dimension() const { return fan_.dimension(); }
  const Fan& fan() const { return fan_; }
  const QVector& offsets() const { return offsets_; }
  std::vector<Facet> facets() const;
  const std::vector<VertexRecord>& vertices() const { return vertices_; }

  /// Faces ordered by dimension, then lexicographically by facet set.
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(const FacetSet& facets) const;
  const Face& full_face() const;

  /// Value of facet function i at y.
  Rational facet_value(std::size_t i, const QVector& y) const;

  /// Sorted list of vertex facet sets; equal lists mean equal combinatorial type.
  std::vector<FacetSet> combinatorial_type() const;

 private:
  void build_faces();

  Fan fan_;
  QVector offsets_;
  std::vector<VertexRecord> vertices_;
  std::vector<Face> faces_;
};

std::vector<Face> enumerate_faces(const DelzantPolytope& polytope);

/// Affine coordinates on a face: y = base + basis·t, with the basis columns a
/// lattice basis of span(face) ∩ Z^n.
struct FaceChart {
  QVector base;
  lattice::ZMatrix basis;  ///< n × p

  int dimension() const { return basis.empty() ? 0 : static_cast<int>(basis[0].size()); }
  QVector forward(const QVector& y) const;
  QVector backward(const QVector& t) const;
};

FaceChart face_chart(const DelzantPolytope& polytope, const Face& face);

Rational lattice_volume(const DelzantPolytope& polytope, const Face& face);

/// a(y) = <coefficients, y> + constant.
struct AffineFunction {
  QVector coefficients;
  Rational constant = 0;
  Rational operator()(const QVector& y) const;
};

Rational integrate_affine(const DelzantPolytope& polytope, const Face& face, const AffineFunction& a);

/// Lattice-normalized simplices of a pulling triangulation of the face, as
/// vertex lists in ambient coordinates with their lattice volumes.
struct LatticeSimplex {
  std::vector<QVector> vertices;
  Rational volume;
};
std::vector<LatticeSimplex> triangulate(const DelzantPolytope& polytope, const Face& face);

QVector barycenter(const DelzantPolytope& polytope, const Face& face);

/// Offsets beta + s·alpha over the shared fan.
QVector summed_offsets(const QVector& beta, const QVector& alpha, const Rational& s);

Rational summed_face_volume(const Fan& fan, const QVector& beta, const QVector& alpha,
                            const FacetSet& face, const Rational& s);

/// d/ds Vol_L(F(beta + s·alpha)) at s = 0 by exact interpolation.
Rational mixed_first_derivative(const Fan& fan, const QVector& beta, const QVector& alpha,
                                const FacetSet& face);

}  // namespace toricj
