#include "toricj/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace toricj {

namespace {

using Json = nlohmann::ordered_json;

std::string set_string(const FacetSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string qvec_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string zvec_string(const ZVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

std::string exact(const Rational& q) { return to_string(q) + " (" + to_decimal(q, 20) + ")"; }

Json rational_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"decimal", to_decimal(q, 20)}}; }

Json qvec_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json input_json(const ProblemFile& f) {
  Json normals = Json::array();
  for (const auto& n : f.fan.normals) normals.push_back(n);
  Json j;
  j["source"] = f.source;
  j["version"] = f.version;
  j["fan"] = Json{{"normals", normals}};
  j["offsets_beta"] = qvec_json(f.offsets_beta);
  j["offsets_alpha"] = qvec_json(f.offsets_alpha);
  j["a_v"] = qvec_json(f.a_v);
  j["c"] = f.c ? Json(to_string(*f.c)) : Json(nullptr);
  return j;
}

Json settings_json(const SolverSettings& s) {
  return Json{{"grid", s.grid},
              {"margin", to_string(s.margin)},
              {"tol", s.tol},
              {"max_steps", s.max_steps},
              {"seed", s.seed},
              {"scheme", s.scheme == FlowScheme::Explicit ? "explicit" : "implicit"},
              {"boundary", to_string(s.boundary)},
              {"deep_margin", to_string(s.deep_margin)}};
}

void input_text(std::ostream& os, const ProblemFile& f) {
  os << "Problem " << f.source << "\n";
  os << "  dimension " << f.fan.dimension() << ", " << f.fan.size() << " facets\n";
  os << "  normals       ";
  for (std::size_t i = 0; i < f.fan.size(); ++i) os << (i ? " " : "") << zvec_string(f.fan.normals[i]);
  os << "\n  offsets beta  " << qvec_string(f.offsets_beta) << "\n";
  os << "  offsets alpha " << qvec_string(f.offsets_alpha) << "\n";
  os << "  a_v           " << qvec_string(f.a_v) << "\n";
  if (f.c) os << "  c             " << to_string(*f.c) << "\n";
}

Json validation_json_part(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid;
  if (!r.valid) {
    j["error"] = to_string(r.error);
    j["message"] = r.message;
    j["witness"] = r.witness;
  }
  Json verts = Json::array();
  for (const auto& v : r.vertices)
    verts.push_back(Json{{"point", qvec_json(v.point)}, {"facets", v.facets}, {"determinant", to_string(v.determinant)}});
  j["vertices"] = verts;
  return j;
}

void validation_text_part(std::ostream& os, const std::string& name, const ValidationReport& r) {
  os << name << ": " << (r.valid ? "valid Delzant polytope" : "INVALID (" + to_string(r.error) + ")") << "\n";
  if (!r.valid) {
    os << "  " << r.message << "\n";
    if (!r.witness.empty()) os << "  witness vertex facets " << set_string(r.witness) << "\n";
  }
  for (const auto& v : r.vertices)
    os << "  vertex " << qvec_string(v.point) << " facets " << set_string(v.facets) << " det "
       << to_string(v.determinant) << "\n";
}

Json constants_json(const CheckOutcome& c) {
  Json j;
  j["c_X"] = rational_json(c.constants.c_X);
  j["c_X_facet_formula"] = rational_json(c.constants.c_X_facet_formula);
  j["alpha_n"] = rational_json(c.constants.alpha_n);
  j["beta_n"] = rational_json(c.constants.beta_n);
  j["alpha_beta_n_minus_1"] = rational_json(c.constants.alpha_beta);
  j["c"] = rational_json(c.c);
  j["b"] = rational_json(c.b);
  j["hamiltonian_mean"] = rational_json(c.ham.mean);
  j["theta_min"] = rational_json(c.theta.min);
  j["theta_max"] = rational_json(c.theta.max);
  j["C_theta"] = rational_json(c.theta.c_theta);
  j["m_X"] = rational_json(c.theta.m_X);
  return j;
}

Json criterion_json(const CriterionReport& r) {
  Json faces = Json::array();
  for (const auto& f : r.faces)
    faces.push_back(Json{{"facets", f.face},
                         {"dimension", f.dimension},
                         {"volume_term", rational_json(f.volume_term)},
                         {"theta_term", rational_json(f.theta_term)},
                         {"mixed_term", rational_json(f.mixed_term)},
                         {"scale", to_string(f.scale)},
                         {"value", rational_json(f.value)},
                         {"sign", f.value > 0 ? "+" : (f.value < 0 ? "-" : "0")}});
  Json j;
  j["m_X"] = rational_json(r.m_X);
  j["m_X_positive"] = r.m_X_positive;
  j["faces"] = faces;
  if (const FaceValue* m = r.min_face())
    j["min_face"] = Json{{"facets", m->face}, {"value", rational_json(m->value)}};
  else
    j["min_face"] = nullptr;
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  j["verdict"] = r.pass ? "PASS" : "FAIL";
  return j;
}

void check_text_part(std::ostream& os, const CheckOutcome& c) {
  os << "Constants\n";
  os << "  c_X                 = " << exact(c.constants.c_X) << "\n";
  os << "  c_X (facet formula) = " << exact(c.constants.c_X_facet_formula) << "\n";
  os << "  alpha^n = " << to_string(c.constants.alpha_n) << ", beta^n = " << to_string(c.constants.beta_n)
     << ", alpha.beta^(n-1) = " << to_string(c.constants.alpha_beta) << "\n";
  os << "  c = " << exact(c.c) << ", b = " << exact(c.b) << "\n";
  os << "  theta range [" << to_string(c.theta.min) << ", " << to_string(c.theta.max)
     << "], C_theta = " << exact(c.theta.c_theta) << "\n";
  os << "  m_X = " << exact(c.theta.m_X) << "\n";

  const CriterionReport& r = c.criterion;
  os << "Criterion\n";
  os << "  m_X = " << to_string(r.m_X) << (r.m_X_positive ? " > 0" : " <= 0") << "\n";
  if (r.faces.empty()) os << "  no faces of dimension 1..n-1\n";
  for (const auto& f : r.faces)
    os << "  face " << std::left << std::setw(10) << set_string(f.face) << " p=" << f.dimension
       << "  c_X*Vol=" << to_string(f.volume_term) << "  int A_c=" << to_string(f.theta_term)
       << "  V1=" << to_string(f.mixed_term) << "  value=" << to_string(f.value)
       << (f.value > 0 ? "  (+)" : f.value < 0 ? "  (-)" : "  (0)") << "\n";
  if (const FaceValue* m = r.min_face())
    os << "  min face value " << exact(m->value) << " at " << set_string(m->face) << "\n";
  os << "Verdict: " << (r.pass ? "PASS" : "FAIL");
  if (!r.pass) {
    if (r.witness)
      os << " (witness face " << set_string(*r.witness) << ")";
    else
      os << " (m_X is not positive)";
  }
  os << "\n";
}

Json trace_summary_json(const SolveOutcome& s) {
  const FlowTrace& t = s.result.trace;
  Json j;
  j["termination"] = to_string(t.reason);
  j["message"] = t.message;
  j["steps"] = t.steps.empty() ? 0 : t.steps.back().step;
  j["rejected_steps"] = t.rejected;
  if (!t.steps.empty()) {
    const StepRecord& last = t.steps.back();
    j["final"] = Json{{"t", number(last.t)}, {"res_sup", number(last.res_sup)}, {"res_l2", number(last.res_l2)},
                      {"E", number(last.E)}, {"dJ", number(last.dJ)}};
  } else {
    j["final"] = nullptr;
  }
  j["energy"] = Json{{"E_first", number(s.energy.first)},
                     {"E_last", number(s.energy.last)},
                     {"max_relative_increase", number(s.energy.max_relative_increase)},
                     {"E_non_increasing", s.energy.E_monotone},
                     {"dJ_non_increasing", s.energy.dJ_monotone}};
  j["oracle"] = s.has_oracle ? Json("available") : Json(s.oracle_note);
  j["deep_error"] = s.deep_error ? number(*s.deep_error) : Json(nullptr);
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string validation_text(const ProblemFile& file, const ValidationOutcome& v) {
  std::ostringstream os;
  input_text(os, file);
  validation_text_part(os, "beta", v.beta);
  validation_text_part(os, "alpha", v.alpha);
  if (v.fan_mismatch) os << "FanMismatch: " << *v.fan_mismatch << "\n";
  os << "Result: " << (v.valid() ? "valid" : "invalid") << "\n";
  return os.str();
}

std::string validation_json(const ProblemFile& file, const ValidationOutcome& v) {
  Json j;
  j["command"] = "validate";
  j["input"] = input_json(file);
  j["beta"] = validation_json_part(v.beta);
  j["alpha"] = validation_json_part(v.alpha);
  j["fan_mismatch"] = v.fan_mismatch ? Json(*v.fan_mismatch) : Json(nullptr);
  j["valid"] = v.valid();
  return j.dump(2) + "\n";
}

std::string check_text(const ProblemFile& file, const CheckOutcome& c) {
  std::ostringstream os;
  input_text(os, file);
  check_text_part(os, c);
  return os.str();
}

std::string check_json(const ProblemFile& file, const CheckOutcome& c) {
  Json j;
  j["command"] = "check";
  j["input"] = input_json(file);
  j["constants"] = constants_json(c);
  j["criterion"] = criterion_json(c.criterion);
  j["verdict"] = c.criterion.pass ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

std::string solve_text(const ProblemFile& file, const CheckOutcome& c, const SolverSettings& settings,
                       const SolveOutcome& s) {
  std::ostringstream os;
  input_text(os, file);
  check_text_part(os, c);
  const FlowTrace& t = s.result.trace;
  const PotentialGrid& g = s.result.grid;
  os << "Solver\n";
  os << "  grid " << settings.grid << " per axis, margin " << to_string(settings.margin) << ", "
     << g.interior_nodes().size() << " interior and " << g.ring_nodes().size() << " ring nodes\n";
  os << "  scheme " << to_string(settings.scheme) << ", boundary " << to_string(settings.boundary) << ", tol "
     << format_double(settings.tol) << ", max steps " << settings.max_steps << "\n";
  os << "  termination " << to_string(t.reason);
  if (!t.message.empty()) os << ": " << t.message;
  os << "\n";
  if (!t.steps.empty()) {
    const StepRecord& last = t.steps.back();
    os << "  steps " << last.step << " (" << t.rejected << " rejected), t = " << format_double(last.t) << "\n";
    os << "  residual sup " << format_double(last.res_sup) << ", L2 " << format_double(last.res_l2) << "\n";
    os << "  E " << format_double(s.energy.first) << " -> " << format_double(s.energy.last)
       << ", largest relative increase " << format_double(s.energy.max_relative_increase) << "\n";
    os << "  E non-increasing: " << (s.energy.E_monotone ? "yes" : "no")
       << ", dJ non-increasing: " << (s.energy.dJ_monotone ? "yes" : "no") << ", dJ = " << format_double(last.dJ)
       << "\n";
  }
  if (s.deep_error)
    os << "  max |h - h_oracle| on depth >= " << to_string(settings.deep_margin) << ": "
       << format_double(*s.deep_error) << "\n";
  else
    os << "  no exact solution for comparison: " << s.oracle_note << "\n";
  return os.str();
}

std::string solve_json(const ProblemFile& file, const CheckOutcome& c, const SolverSettings& settings,
                       const SolveOutcome& s) {
  Json j;
  j["command"] = "solve";
  j["input"] = input_json(file);
  j["solver_settings"] = settings_json(settings);
  j["constants"] = constants_json(c);
  j["criterion"] = criterion_json(c.criterion);
  j["solver"] = trace_summary_json(s);
  j["verdict"] = c.criterion.pass ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

std::string lab_text(const lab::SuiteReport& r) {
  std::ostringstream os;
  os << "Suite " << r.suite << ", seed " << r.seed << ", " << r.samples << " samples\n";
  for (const auto& n : r.notes) os << "  " << n << "\n";
  for (const auto& c : r.checks)
    os << "  " << std::left << std::setw(40) << c.name << " " << std::right << std::setw(7) << c.evaluated
       << " checked, " << c.failed << " failed, worst " << format_double(c.worst) << "\n";
  for (const auto& ce : r.counterexamples)
    os << "COUNTEREXAMPLE " << ce.check << " (sample " << ce.sample << "): " << ce.inputs << "\n";
  os << "Result: " << (r.passed() ? "all properties hold" : std::to_string(r.failures()) + " failures") << "\n";
  return os.str();
}

std::string lab_json(const lab::SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"evaluated", c.evaluated}, {"failed", c.failed}, {"worst", number(c.worst)}});
  Json ces = Json::array();
  for (const auto& ce : r.counterexamples)
    ces.push_back(Json{{"check", ce.check}, {"sample", ce.sample}, {"inputs", ce.inputs}});
  Json j;
  j["command"] = "lab";
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["notes"] = r.notes;
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back({{"name", p.name}, {"hits", p.hits}, {"evaluated", p.evaluated}});
  j["probes"] = probes;
  j["checks"] = checks;
  j["counterexamples"] = ces;
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
  out << "step,t,dt,res_sup,res_l2,E,dJ\n";
  for (const auto& s : trace.steps)
    out << s.step << ',' << format_double(s.t) << ',' << format_double(s.dt) << ',' << format_double(s.res_sup) << ','
        << format_double(s.res_l2) << ',' << format_double(s.E) << ',' << format_double(s.dJ) << '\n';
}

void write_grid_csv(std::ostream& out, const ProblemSpec& problem, const PotentialGrid& grid) {
  const int n = grid.dimension();
  std::vector<double> res(grid.size(), std::nan(""));
  try {
    const ResidualField r = residual(problem, grid);
    for (std::size_t k = 0; k < r.nodes.size(); ++k) res[r.nodes[k]] = r.values[static_cast<Eigen::Index>(k)];
  } catch (const std::exception&) {
    // Leave the residual column empty when the state cannot be evaluated.
  }
  for (int i = 0; i < n; ++i) out << 'y' << i + 1 << ',';
  out << "u,h,residual\n";
  for (std::size_t p : grid.active_nodes()) {
    const Eigen::VectorXd y = grid.point(p);
    const double u = grid.u[static_cast<Eigen::Index>(p)];
    for (int i = 0; i < n; ++i) out << format_double(y[i]) << ',';
    out << format_double(u) << ',' << format_double(grid.canonical().eval(y).value + u) << ',';
    if (!std::isnan(res[p])) out << format_double(res[p]);
    out << '\n';
  }
}

}  // namespace toricj
