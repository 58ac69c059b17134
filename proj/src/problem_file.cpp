#include "toricj/problem_file.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace toricj {

namespace {

std::string format_error(const std::string& source, int line, int column, const std::string& message) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line << ":" << column;
  os << ": " << message;
  return os.str();
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
    const YAML::Mark m = at.Mark();
    if (m.is_null()) throw ParseError(source_, 0, 0, message);
    throw ParseError(source_, m.line + 1, m.column + 1, message);
  }

  void expect_map(const YAML::Node& node, const std::string& what, const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    }
  }

  YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& what) const {
    YAML::Node v = map[key];
    if (!v) fail(map, "missing key '" + key + "' in " + what);
    return v;
  }

  std::string scalar(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    return node.Scalar();
  }

  long integer(const YAML::Node& node, const std::string& what) const {
    const std::string s = scalar(node, what);
    long v = 0;
    const char* begin = s.data();
    if (!s.empty() && s.front() == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || begin == s.data() + s.size())
      fail(node, what + " must be an integer, got '" + s + "'");
    return v;
  }

  std::uint64_t unsigned_integer(const YAML::Node& node, const std::string& what) const {
    const std::string s = scalar(node, what);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      fail(node, what + " must be a non-negative integer, got '" + s + "'");
    return v;
  }

  double real(const YAML::Node& node, const std::string& what) const {
    const std::string s = scalar(node, what);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) fail(node, what + " must be a number, got '" + s + "'");
    return v;
  }

  Rational rational(const YAML::Node& node, const std::string& what) const {
    const std::string s = scalar(node, what);
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument& e) {
      fail(node, what + ": " + e.what());
    }
  }

  QVector rationals(const YAML::Node& node, const std::string& what) const {
    if (!node.IsSequence()) fail(node, what + " must be a sequence");
    QVector out;
    for (std::size_t i = 0; i < node.size(); ++i)
      out.push_back(rational(node[i], what + "[" + std::to_string(i) + "]"));
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

void parse_solver(const Reader& r, const YAML::Node& node, SolverSettings& s) {
  r.expect_map(node, "solver", {"grid", "margin", "tol", "max_steps", "seed", "scheme", "boundary", "deep_margin"});
  if (auto v = node["grid"]) {
    const long g = r.integer(v, "solver.grid");
    if (g < 5 || g > 100000) r.fail(v, "solver.grid must lie in [5, 100000]");
    s.grid = static_cast<int>(g);
  }
  if (auto v = node["margin"]) {
    s.margin = r.rational(v, "solver.margin");
    if (s.margin <= 0) r.fail(v, "solver.margin must be positive");
  }
  if (auto v = node["tol"]) {
    s.tol = r.real(v, "solver.tol");
    if (!(s.tol > 0.0)) r.fail(v, "solver.tol must be positive");
  }
  if (auto v = node["max_steps"]) {
    const long m = r.integer(v, "solver.max_steps");
    if (m < 0 || m > 10000000) r.fail(v, "solver.max_steps must lie in [0, 10^7]");
    s.max_steps = static_cast<int>(m);
  }
  if (auto v = node["seed"]) s.seed = r.unsigned_integer(v, "solver.seed");
  if (auto v = node["scheme"]) {
    const std::string t = r.scalar(v, "solver.scheme");
    if (t == "implicit") s.scheme = FlowScheme::LinearlyImplicit;
    else if (t == "explicit") s.scheme = FlowScheme::Explicit;
    else r.fail(v, "solver.scheme must be 'implicit' or 'explicit'");
  }
  if (auto v = node["boundary"]) {
    const std::string t = r.scalar(v, "solver.boundary");
    if (t == "oracle") s.boundary = BoundaryData::Oracle;
    else if (t == "zero") s.boundary = BoundaryData::Zero;
    else r.fail(v, "solver.boundary must be 'oracle' or 'zero'");
  }
  if (auto v = node["deep_margin"]) {
    s.deep_margin = r.rational(v, "solver.deep_margin");
    if (s.deep_margin < 0) r.fail(v, "solver.deep_margin must be non-negative");
  }
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(format_error(source, line, column, message)), line_(line), column_(column),
      message_(message) {}

std::string to_string(BoundaryData b) { return b == BoundaryData::Oracle ? "oracle" : "zero"; }

ProblemFile parse_problem_text(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  const Reader r(source);
  if (!root || root.IsNull()) throw ParseError(source, 0, 0, "empty problem file");
  r.expect_map(root, "problem file",
               {"version", "fan", "offsets_beta", "offsets_alpha", "a_v", "c", "solver", "output"});

  ProblemFile p;
  p.source = source;
  const YAML::Node version = r.require(root, "version", "problem file");
  p.version = static_cast<int>(r.integer(version, "version"));
  if (p.version != 1) r.fail(version, "unsupported version " + std::to_string(p.version) + " (expected 1)");

  const YAML::Node fan = r.require(root, "fan", "problem file");
  r.expect_map(fan, "fan", {"normals"});
  const YAML::Node normals = r.require(fan, "normals", "fan");
  if (!normals.IsSequence() || normals.size() == 0) r.fail(normals, "fan.normals must be a non-empty sequence");
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const YAML::Node row = normals[i];
    const std::string what = "fan.normals[" + std::to_string(i) + "]";
    if (!row.IsSequence() || row.size() == 0) r.fail(row, what + " must be a non-empty sequence");
    ZVector v;
    for (std::size_t j = 0; j < row.size(); ++j) v.push_back(r.integer(row[j], what + "[" + std::to_string(j) + "]"));
    if (!p.fan.normals.empty() && v.size() != p.fan.normals.front().size())
      r.fail(row, what + " has " + std::to_string(v.size()) + " entries, expected " +
                      std::to_string(p.fan.normals.front().size()));
    p.fan.normals.push_back(std::move(v));
  }
  const std::size_t m = p.fan.normals.size();
  const std::size_t n = p.fan.normals.front().size();

  auto offsets = [&](const std::string& key) {
    const YAML::Node node = r.require(root, key, "problem file");
    QVector q = r.rationals(node, key);
    if (q.size() != m)
      r.fail(node, key + " has " + std::to_string(q.size()) + " entries, expected one per normal (" +
                       std::to_string(m) + ")");
    return q;
  };
  p.offsets_beta = offsets("offsets_beta");
  p.offsets_alpha = offsets("offsets_alpha");

  const YAML::Node av = r.require(root, "a_v", "problem file");
  p.a_v = r.rationals(av, "a_v");
  if (p.a_v.size() != n)
    r.fail(av, "a_v has " + std::to_string(p.a_v.size()) + " entries, expected the dimension " + std::to_string(n));

  if (auto c = root["c"]) p.c = r.rational(c, "c");
  if (auto s = root["solver"]) parse_solver(r, s, p.solver);
  if (auto o = root["output"]) {
    r.expect_map(o, "output", {"dir"});
    if (auto d = o["dir"]) p.output_dir = r.scalar(d, "output.dir");
  }
  return p;
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path);
}

}  // namespace toricj
