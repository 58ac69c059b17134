#include "toricj/toric_core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toricj {

std::string to_string(GeometryErrorKind kind) {
  switch (kind) {
    case GeometryErrorKind::InvalidFacet: return "InvalidFacet";
    case GeometryErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case GeometryErrorKind::NotFullDimensional: return "NotFullDimensional";
    case GeometryErrorKind::NonSimpleVertex: return "NonSimpleVertex";
    case GeometryErrorKind::NonUnimodularVertex: return "NonUnimodularVertex";
    case GeometryErrorKind::RedundantFacet: return "RedundantFacet";
    case GeometryErrorKind::InvalidPolytope: return "InvalidPolytope";
    case GeometryErrorKind::DegenerateFace: return "DegenerateFace";
    case GeometryErrorKind::ChartFailure: return "ChartFailure";
    case GeometryErrorKind::FanMismatch: return "FanMismatch";
    case GeometryErrorKind::DegreeOverflow: return "DegreeOverflow";
    case GeometryErrorKind::UnknownFace: return "UnknownFace";
  }
  return "Unknown";
}

namespace {

std::string format_set(const FacetSet& s) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << "}";
  return out.str();
}

// All k-subsets of {0..m-1} in lexicographic order.
std::vector<FacetSet> subsets(int m, int k) {
  std::vector<FacetSet> out;
  if (k < 0 || k > m) return out;
  FacetSet cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

lattice::QMatrix rows_of(const Fan& fan, const FacetSet& set) {
  lattice::QMatrix m;
  for (int i : set) {
    std::vector<Rational> row;
    for (long x : fan.normals[static_cast<std::size_t>(i)]) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

ValidationReport fail(ValidationReport r, GeometryErrorKind kind, std::string msg,
                      FacetSet witness = {}) {
  r.valid = false;
  r.error = kind;
  r.message = std::move(msg);
  r.witness = std::move(witness);
  return r;
}

int affine_rank(const std::vector<QVector>& points) {
  if (points.size() <= 1) return 0;
  lattice::QMatrix diffs;
  for (std::size_t k = 1; k < points.size(); ++k) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < points[0].size(); ++j) row.push_back(points[k][j] - points[0][j]);
    diffs.push_back(std::move(row));
  }
  return lattice::rank(diffs);
}

}  // namespace

ValidationReport validate_delzant(const Fan& fan, const QVector& raw_offsets) {
  QVector offsets = raw_offsets;
  for (auto& q : offsets) q.canonicalize();
  ValidationReport report;
  const int n = fan.dimension();
  const int m = static_cast<int>(fan.size());
  if (m == 0 || n < 1) return fail(report, GeometryErrorKind::InvalidFacet, "no facets");
  if (offsets.size() != fan.size())
    return fail(report, GeometryErrorKind::InvalidFacet, "offset count does not match normal count");
  for (int i = 0; i < m; ++i) {
    const auto& u = fan.normals[static_cast<std::size_t>(i)];
    if (static_cast<int>(u.size()) != n)
      return fail(report, GeometryErrorKind::InvalidFacet,
                  "normal " + std::to_string(i) + " has the wrong dimension", {i});
    std::vector<Integer> entries(u.begin(), u.end());
    Integer g = lattice::gcd_of(entries);
    if (g == 0)
      return fail(report, GeometryErrorKind::InvalidFacet, "normal " + std::to_string(i) + " is zero", {i});
    if (g != 1)
      return fail(report, GeometryErrorKind::InvalidFacet,
                  "normal " + std::to_string(i) + " is not primitive", {i});
  }

  // Recession cone {d : U d >= 0} must be {0}.
  FacetSet all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
  if (lattice::rank(rows_of(fan, all)) < n)
    return fail(report, GeometryErrorKind::UnboundedPolytope, "normals do not span R^n");
  for (const auto& sub : subsets(m, n - 1)) {
    lattice::ZMatrix a;
    for (int i : sub) a.emplace_back(fan.normals[static_cast<std::size_t>(i)].begin(),
                                     fan.normals[static_cast<std::size_t>(i)].end());
    auto kernel = lattice::integer_kernel(a, static_cast<std::size_t>(n));
    if (kernel.empty() || kernel[0].size() != 1) continue;
    for (int sign : {1, -1}) {
      bool ray = true;
      for (const auto& u : fan.normals) {
        Integer s = 0;
        for (int j = 0; j < n; ++j) s += Integer(u[static_cast<std::size_t>(j)]) * kernel[static_cast<std::size_t>(j)][0];
        if (sign * sgn(s) < 0) {
          ray = false;
          break;
        }
      }
      if (ray) return fail(report, GeometryErrorKind::UnboundedPolytope, "polytope has a recession direction");
    }
  }

  // Vertices: feasible intersections of n independent facets.
  std::map<QVector, FacetSet> found;
  for (const auto& sub : subsets(m, n)) {
    QVector rhs;
    for (int i : sub) rhs.push_back(-offsets[static_cast<std::size_t>(i)]);
    auto point = lattice::solve(rows_of(fan, sub), rhs);
    if (!point) continue;
    bool feasible = true;
    FacetSet tight;
    for (int i = 0; i < m; ++i) {
      Rational v = dot(fan.normals[static_cast<std::size_t>(i)], *point) + offsets[static_cast<std::size_t>(i)];
      if (v < 0) {
        feasible = false;
        break;
      }
      if (v == 0) tight.push_back(i);
    }
    if (feasible) found.emplace(*point, tight);
  }
  for (auto& [pt, tight] : found) {
    FacetSet first(tight.begin(), tight.begin() + std::min<long>(n, static_cast<long>(tight.size())));
    report.vertices.push_back({pt, tight, lattice::determinant(rows_of(fan, first))});
  }
  std::sort(report.vertices.begin(), report.vertices.end(),
            [](const VertexRecord& a, const VertexRecord& b) { return a.facets < b.facets; });

  std::vector<QVector> points;
  for (const auto& v : report.vertices) points.push_back(v.point);
  if (points.empty() || affine_rank(points) < n)
    return fail(report, GeometryErrorKind::NotFullDimensional, "polytope is empty or lower dimensional");

  for (const auto& v : report.vertices) {
    if (static_cast<int>(v.facets.size()) > n)
      return fail(report, GeometryErrorKind::NonSimpleVertex,
                  "more than n facets meet at vertex with facets " + format_set(v.facets), v.facets);
    if (abs(v.determinant) != 1)
      return fail(report, GeometryErrorKind::NonUnimodularVertex,
                  "vertex with facets " + format_set(v.facets) + " has determinant " + to_string(v.determinant),
                  v.facets);
  }

  for (int i = 0; i < m; ++i) {
    std::vector<QVector> on;
    for (const auto& v : report.vertices)
      if (std::binary_search(v.facets.begin(), v.facets.end(), i)) on.push_back(v.point);
    if (on.empty() || affine_rank(on) != n - 1)
      return fail(report, GeometryErrorKind::RedundantFacet,
                  "facet " + std::to_string(i) + " does not support a codimension-one face", {i});
  }

  report.valid = true;
  report.message = "valid";
  return report;
}

ValidationReport validate_delzant(const std::vector<Facet>& facets) {
  Fan fan;
  QVector offsets;
  for (const auto& f : facets) {
    fan.normals.push_back(f.normal);
    offsets.push_back(f.offset);
  }
  return validate_delzant(fan, offsets);
}

DelzantPolytope::DelzantPolytope(Fan fan, QVector offsets) : fan_(std::move(fan)), offsets_(std::move(offsets)) {
  for (auto& q : offsets_) q.canonicalize();
  auto report = validate_delzant(fan_, offsets_);
  if (!report.valid) throw GeometryError(report.error, report.message);
  vertices_ = std::move(report.vertices);
  build_faces();
}

namespace {
Fan fan_of(const std::vector<Facet>& facets) {
  Fan fan;
  for (const auto& f : facets) fan.normals.push_back(f.normal);
  return fan;
}
QVector offsets_of(const std::vector<Facet>& facets) {
  QVector o;
  for (const auto& f : facets) o.push_back(f.offset);
  return o;
}
}  // namespace

DelzantPolytope::DelzantPolytope(const std::vector<Facet>& facets)
    : DelzantPolytope(fan_of(facets), offsets_of(facets)) {}

std::vector<Facet> DelzantPolytope::facets() const {
  std::vector<Facet> out;
  for (std::size_t i = 0; i < fan_.size(); ++i) out.push_back({fan_.normals[i], offsets_[i]});
  return out;
}

void DelzantPolytope::build_faces() {
  const int n = dimension();
  std::set<FacetSet> sets;
  for (const auto& v : vertices_) {
    const int k = static_cast<int>(v.facets.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      FacetSet s;
      for (int b = 0; b < k; ++b)
        if (mask & (1 << b)) s.push_back(v.facets[static_cast<std::size_t>(b)]);
      sets.insert(s);
    }
  }
  for (const auto& s : sets) {
    Face f;
    f.facets = s;
    f.dimension = n - static_cast<int>(s.size());
    for (const auto& v : vertices_)
      if (std::includes(v.facets.begin(), v.facets.end(), s.begin(), s.end())) f.vertices.push_back(v.point);
    faces_.push_back(std::move(f));
  }
  std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.facets < b.facets;
  });
}

const Face& DelzantPolytope::face(const FacetSet& facets) const {
  FacetSet key = facets;
  std::sort(key.begin(), key.end());
  for (const auto& f : faces_)
    if (f.facets == key) return f;
  throw GeometryError(GeometryErrorKind::UnknownFace, "no face with facet set " + format_set(key));
}

const Face& DelzantPolytope::full_face() const { return faces_.back(); }

Rational DelzantPolytope::facet_value(std::size_t i, const QVector& y) const {
  return dot(fan_.normals.at(i), y) + offsets_.at(i);
}

std::vector<FacetSet> DelzantPolytope::combinatorial_type() const {
  std::vector<FacetSet> t;
  for (const auto& v : vertices_) t.push_back(v.facets);
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<Face> enumerate_faces(const DelzantPolytope& polytope) { return polytope.faces(); }

QVector FaceChart::forward(const QVector& y) const {
  const std::size_t n = base.size();
  const std::size_t p = static_cast<std::size_t>(dimension());
  lattice::QMatrix gram(p, std::vector<Rational>(p, 0));
  QVector rhs(p, 0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t r = 0; r < n; ++r) gram[a][b] += Rational(basis[r][a] * basis[r][b]);
    for (std::size_t r = 0; r < n; ++r) rhs[a] += Rational(basis[r][a]) * (y[r] - base[r]);
  }
  auto t = lattice::solve(gram, rhs);
  if (!t) throw GeometryError(GeometryErrorKind::ChartFailure, "singular chart basis");
  if (backward(*t) != y) throw GeometryError(GeometryErrorKind::ChartFailure, "point is off the face");
  return *t;
}

QVector FaceChart::backward(const QVector& t) const {
  QVector y = base;
  for (std::size_t r = 0; r < y.size(); ++r)
    for (std::size_t a = 0; a < t.size(); ++a) y[r] += Rational(basis[r][a]) * t[a];
  return y;
}

FaceChart face_chart(const DelzantPolytope& polytope, const Face& face) {
  if (face.dimension < 1) throw GeometryError(GeometryErrorKind::DegenerateFace, "vertex has no chart");
  const auto n = static_cast<std::size_t>(polytope.dimension());
  lattice::ZMatrix a;
  for (int i : face.facets) {
    const auto& u = polytope.fan().normals[static_cast<std::size_t>(i)];
    a.emplace_back(u.begin(), u.end());
  }
  auto kernel = lattice::integer_kernel(a, n);
  if (kernel.empty() || static_cast<int>(kernel[0].size()) != face.dimension)
    throw GeometryError(GeometryErrorKind::ChartFailure, "face direction lattice has the wrong rank");
  // Canonical basis: rows of the HNF of kernelᵀ.
  auto basis = lattice::transpose(lattice::hermite_normal_form(lattice::transpose(kernel)));
  if (!lattice::is_saturated_basis(basis))
    throw GeometryError(GeometryErrorKind::ChartFailure, "face direction basis is not unimodular");
  return FaceChart{face.vertices.front(), std::move(basis)};
}

Rational AffineFunction::operator()(const QVector& y) const {
  Rational v = constant;
  for (std::size_t i = 0; i < coefficients.size(); ++i) v += coefficients[i] * y[i];
  return v;
}

namespace {

std::vector<std::vector<QVector>> pulling(const DelzantPolytope& poly, const Face& face) {
  if (face.dimension == 0) return {{face.vertices.front()}};
  const QVector& apex = face.vertices.front();
  std::vector<std::vector<QVector>> out;
  for (std::size_t i = 0; i < poly.fan().size(); ++i) {
    const int idx = static_cast<int>(i);
    if (std::binary_search(face.facets.begin(), face.facets.end(), idx)) continue;
    FacetSet sub = face.facets;
    sub.insert(std::lower_bound(sub.begin(), sub.end(), idx), idx);
    const Face* facet = nullptr;
    for (const auto& f : poly.faces())
      if (f.facets == sub) facet = &f;
    if (!facet || facet->dimension != face.dimension - 1) continue;
    if (std::find(facet->vertices.begin(), facet->vertices.end(), apex) != facet->vertices.end()) continue;
    for (auto simplex : pulling(poly, *facet)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

Rational factorial(int p) {
  Rational f = 1;
  for (int k = 2; k <= p; ++k) f *= k;
  return f;
}

}  // namespace

std::vector<LatticeSimplex> triangulate(const DelzantPolytope& polytope, const Face& face) {
  if (face.dimension == 0) return {{{face.vertices.front()}, Rational(1)}};
  const FaceChart chart = face_chart(polytope, face);
  const auto p = static_cast<std::size_t>(face.dimension);
  std::vector<LatticeSimplex> out;
  for (auto& simplex : pulling(polytope, face)) {
    std::vector<QVector> t;
    for (const auto& v : simplex) t.push_back(chart.forward(v));
    lattice::QMatrix edges;
    for (std::size_t k = 1; k <= p; ++k) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < p; ++j) row.push_back(t[k][j] - t[0][j]);
      edges.push_back(std::move(row));
    }
    Rational vol = abs(lattice::determinant(edges)) / factorial(static_cast<int>(p));
    out.push_back({std::move(simplex), vol});
  }
  return out;
}

Rational lattice_volume(const DelzantPolytope& polytope, const Face& face) {
  Rational v = 0;
  for (const auto& s : triangulate(polytope, face)) v += s.volume;
  return v;
}

namespace {
QVector centroid(const std::vector<QVector>& pts) {
  QVector c(pts.front().size(), 0);
  for (const auto& p : pts)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += p[j];
  for (auto& x : c) x /= static_cast<long>(pts.size());
  return c;
}
}  // namespace

Rational integrate_affine(const DelzantPolytope& polytope, const Face& face, const AffineFunction& a) {
  Rational total = 0;
  for (const auto& s : triangulate(polytope, face)) total += s.volume * a(centroid(s.vertices));
  return total;
}

QVector barycenter(const DelzantPolytope& polytope, const Face& face) {
  if (face.dimension == 0) return face.vertices.front();
  QVector acc(static_cast<std::size_t>(polytope.dimension()), 0);
  Rational vol = 0;
  for (const auto& s : triangulate(polytope, face)) {
    auto c = centroid(s.vertices);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += s.volume * c[j];
    vol += s.volume;
  }
  for (auto& x : acc) x /= vol;
  return acc;
}

QVector summed_offsets(const QVector& beta, const QVector& alpha, const Rational& s) {
  if (beta.size() != alpha.size()) throw GeometryError(GeometryErrorKind::FanMismatch, "offset lengths differ");
  QVector out(beta.size());
  const Rational t = canonical(s);
  for (std::size_t i = 0; i < beta.size(); ++i) out[i] = canonical(beta[i]) + t * canonical(alpha[i]);
  return out;
}

Rational summed_face_volume(const Fan& fan, const QVector& beta, const QVector& alpha, const FacetSet& face,
                            const Rational& s) {
  const DelzantPolytope base(fan, beta);
  auto offsets = summed_offsets(beta, alpha, s);
  auto report = validate_delzant(fan, offsets);
  if (!report.valid)
    throw GeometryError(GeometryErrorKind::InvalidPolytope, "summed polytope invalid: " + report.message);
  const DelzantPolytope summed(fan, offsets);
  if (summed.combinatorial_type() != base.combinatorial_type())
    throw GeometryError(GeometryErrorKind::FanMismatch, "summed polytope changes combinatorial type");
  return lattice_volume(summed, summed.face(face));
}

Rational mixed_first_derivative(const Fan& fan, const QVector& beta, const QVector& alpha, const FacetSet& face) {
  const DelzantPolytope base(fan, beta);
  const int p = base.face(face).dimension;
  if (p == 0) return 0;
  // Newton divided differences on nodes s = 0..p; node p+1 checks the degree.
  std::vector<Rational> values;
  for (int s = 0; s <= p + 1; ++s) values.push_back(summed_face_volume(fan, beta, alpha, face, Rational(s)));
  std::vector<Rational> coef(values.begin(), values.begin() + p + 1);
  for (int k = 1; k <= p; ++k)
    for (int i = p; i >= k; --i) coef[static_cast<std::size_t>(i)] =
        (coef[static_cast<std::size_t>(i)] - coef[static_cast<std::size_t>(i - 1)]) / k;
  Rational at_extra = coef[static_cast<std::size_t>(p)];
  for (int k = p - 1; k >= 0; --k) at_extra = at_extra * (Rational(p + 1) - k) + coef[static_cast<std::size_t>(k)];
  if (at_extra != values.back())
    throw GeometryError(GeometryErrorKind::DegreeOverflow, "face volume is not a polynomial of degree <= p in s");
  Rational derivative = 0;
  Rational falling = 1;  // (-1)^(k-1) (k-1)!
  for (int k = 1; k <= p; ++k) {
    derivative += coef[static_cast<std::size_t>(k)] * falling;
    falling *= -k;
  }
  return derivative;
}

}  // namespace toricj
