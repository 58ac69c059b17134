// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: acceptance <path to toricj> <problems dir> <scratch dir>

#include "toricj/matrix_ops.hpp"
#include "toricj/pipeline.hpp"
#include "toricj/property_lab.hpp"
#include "toricj/report.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace toricj;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) { return format_double(x); }

Rational q(const std::string& s) { return parse_rational(s); }

ProblemFile problem(const std::string& yaml) { return parse_problem_text(yaml, "acceptance"); }

const char* kInterval = R"(version: 1
fan:
  normals: [[1], [-1]]
offsets_beta: ["0", "1"]
offsets_alpha: ["0", "2"]
a_v: ["1"]
c: "2"
solver:
  grid: 257
  margin: "1/50"
  tol: 1e-6
  boundary: oracle
)";

const char* kSquare = R"(version: 1
fan:
  normals: [[1, 0], [0, 1], [-1, 0], [0, -1]]
offsets_beta: ["0", "0", "1", "1"]
offsets_alpha: ["0", "0", "2", "1"]
a_v: ["1", "0"]
solver:
  grid: 129
  margin: "1/50"
  tol: 1e-4
  boundary: oracle
)";

ProblemFile plane(const std::string& a) {
  return problem("version: 1\nfan:\n  normals: [[1, 0], [0, 1], [-1, -1]]\noffsets_beta: [\"0\", \"0\", \"1\"]\n"
                 "offsets_alpha: [\"0\", \"0\", \"" + a + "\"]\na_v: [\"1\", \"0\"]\n");
}

// 1. Exact verdicts of the plane family around a = 1/3.
Outcome criterion_plane_threshold() {
  const auto start = Clock::now();
  struct Row {
    const char* a;
    bool pass;
  };
  bool ok = true;
  std::string detail;
  for (const Row& r : {Row{"33/100", false}, Row{"1/3", false}, Row{"34/100", true}}) {
    const CheckOutcome c = run_check(plane(r.a));
    const FaceValue* min = c.criterion.min_face();
    // Independent closed form: the facet {y₁ = 0} has value a − 1/3.
    const bool value_ok = min && min->value == q(r.a) - q("1/3");
    ok = ok && c.criterion.pass == r.pass && value_ok;
    detail += std::string(r.a) + " " + (c.criterion.pass ? "PASS" : "FAIL") + " (" +
              (min ? to_string(min->value) : "?") + "), ";
  }
  const double t = seconds_since(start);
  ok = ok && t < 1.0;
  return {ok, detail + fmt(t) + " s"};
}

// 2. c_X from the mixed derivative against the facet-volume formula.
Outcome criterion_c_X() {
  const auto start = Clock::now();
  const std::vector<Fan> fans{Fan{{{1, 0}, {0, 1}, {-1, -1}}}, Fan{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}},
                              Fan{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}};
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 10);
  auto random_offsets = [&](const Fan& fan) {
    for (;;) {
      QVector v;
      for (std::size_t i = 0; i < fan.size(); ++i) v.push_back(canonical(Rational(Integer(num(rng)), Integer(den(rng)))));
      if (validate_delzant(fan, v).valid) return v;
    }
  };
  int pairs = 0, mismatches = 0, equal_failures = 0;
  for (const Fan& fan : fans) {
    const int n = fan.dimension();
    Rational fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    for (int k = 0; k < 100; ++k) {
      const QVector beta = random_offsets(fan), alpha = random_offsets(fan);
      ++pairs;
      const DelzantPolytope pb(fan, beta);
      // α·β^{n-1} = (n−1)!·d/ds Vol(P_{β+sα}) and β^n = n!·Vol(P_β).
      const Rational beta_n = fact * lattice_volume(pb, pb.full_face());
      const Rational ab_mixed = fact / n * mixed_first_derivative(fan, beta, alpha, {});
      Rational ab_facets = 0;
      for (std::size_t i = 0; i < fan.size(); ++i)
        ab_facets += alpha[i] * lattice_volume(pb, pb.face(FacetSet{static_cast<int>(i)}));
      ab_facets *= fact / n;
      const Rational c_mixed = n * ab_mixed / beta_n;
      const Rational c_facets = n * ab_facets / beta_n;
      const Rational c_lib = intersection_constants(KahlerClassPair(fan, alpha, beta)).c_X;
      if (c_mixed != c_facets || c_lib != c_facets) ++mismatches;
      if (intersection_constants(KahlerClassPair(fan, beta, beta)).c_X != n) ++equal_failures;
    }
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && equal_failures == 0 && t < 10.0,
          std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches, " +
              std::to_string(equal_failures) + " alpha = beta failures, " + fmt(t) + " s"};
}

struct Benchmark {
  ProblemFile file;
  SolveOutcome solve;
  double seconds = 0.0;
};

Benchmark run_benchmark(const char* yaml) {
  const auto start = Clock::now();
  ProblemFile file = problem(yaml);
  const CheckOutcome c = run_check(file);
  const ProblemSpec prob = make_problem(c.pair, file.a_v, file.c);
  SolveOutcome s = run_solve(prob, file.solver);
  return {std::move(file), std::move(s), seconds_since(start)};
}

// 3. Interval benchmark against the transport oracle.
Outcome criterion_interval(const Benchmark& b) {
  const auto& tr = b.solve.result.trace;
  const double sup = tr.steps.empty() ? 1e300 : tr.steps.back().res_sup;
  const double err = b.solve.deep_error.value_or(1e300);
  return {tr.reason == Termination::Converged && sup <= 1e-6 && err <= 1e-4 && b.seconds < 30.0,
          "sup residual " + fmt(sup) + ", deep error " + fmt(err) + ", " + fmt(b.seconds) + " s"};
}

// 4. Product benchmark: order of the interpolated oracle residual, then the flow.
Outcome criterion_product(const Benchmark& b) {
  const auto start = Clock::now();
  const ProblemFile file = problem(kSquare);
  const CheckOutcome c = run_check(file);
  const ProblemSpec prob = make_problem(c.pair, file.a_v, file.c);
  const ProductSolution oracle = product_oracle(prob);
  std::vector<double> res;
  for (int nodes : {33, 65, 129}) {
    PotentialGrid g(prob.pair.beta(), nodes, to_double(file.solver.margin));
    g.set_active(smooth_part(oracle));
    res.push_back(residual(prob, g).sup);
  }
  const double q1 = res[0] / res[1], q2 = res[1] / res[2];
  const auto& tr = b.solve.result.trace;
  const double sup = tr.steps.empty() ? 1e300 : tr.steps.back().res_sup;
  const double err = b.solve.deep_error.value_or(1e300);
  const double t = b.seconds + seconds_since(start);
  const bool ok = q1 >= 3.5 && q1 <= 4.5 && q2 >= 3.5 && q2 <= 4.5 && tr.reason == Termination::Converged &&
                  sup <= 1e-4 && err <= 1e-3 && t < 600.0;
  return {ok, "quotients " + fmt(q1) + ", " + fmt(q2) + "; sup residual " + fmt(sup) + ", deep error " + fmt(err) +
                  ", " + fmt(t) + " s"};
}

// 5. E and ΔJ along both benchmark runs.
Outcome criterion_energy(const Benchmark& a, const Benchmark& b) {
  bool ok = true;
  std::string detail;
  for (const Benchmark* m : {&a, &b}) {
    const EnergySummary& e = m->solve.energy;
    ok = ok && e.E_monotone && e.dJ_monotone && m->solve.result.trace.steps.size() >= 2;
    detail += "n = " + std::to_string(m->file.fan.dimension()) + ": " +
              std::to_string(m->solve.result.trace.steps.size()) + " steps, largest relative E increase " +
              fmt(e.max_relative_increase) + ", dJ " + (e.dJ_monotone ? "non-increasing" : "increasing") + "; ";
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

Outcome suite_outcome(const lab::SuiteReport& r, double seconds, double limit) {
  long evaluated = 0;
  for (const auto& c : r.checks) evaluated += c.evaluated;
  return {r.passed() && seconds < limit, std::to_string(r.samples) + " samples, " + std::to_string(evaluated) +
                                             " checks, " + std::to_string(r.failures()) + " counterexamples, " +
                                             fmt(seconds) + " s"};
}

// 6. Convexity suite, including the gap bound with the constant nK + K^n(2^n − 1).
Outcome criterion_convexity() {
  const auto start = Clock::now();
  const lab::SuiteReport r = lab::run_convexity(42, 10000);
  Outcome o = suite_outcome(r, seconds_since(start), 120.0);
  long linear = -1;
  for (const auto& p : r.probes)
    if (p.name == "omega_gap_above_linear_constant") linear = p.hits;
  o.pass = o.pass && linear == 0;
  o.detail += "; gap above (nK + K^n(2^n - 1)) sigma in " + std::to_string(linear) + " samples";
  return o;
}

// 7. Threshold closed forms.
Outcome criterion_thresholds() {
  const EpsThresholds a = eps_thresholds(1, 2, 1), b = eps_thresholds(2, 3, 1);
  const lab::SuiteReport r = lab::run_thresholds(42, 10000);
  const bool ok = a.eps3 == 0.125 && a.eps4 == 1.0 && b.eps4 == 0.25 && r.passed();
  return {ok, "eps3(1, 2, 1) = " + fmt(a.eps3) + ", eps4(1, 2, 1) = " + fmt(a.eps4) + ", eps4(2, 3, 1) = " +
                  fmt(b.eps4) + ", exact closed-form checks " + (r.passed() ? "hold" : "fail")};
}

Outcome criterion_suite(const std::string& name, long samples) {
  const auto start = Clock::now();
  const lab::SuiteReport r = lab::run_suite(name, 42, samples);
  return suite_outcome(r, seconds_since(start), 600.0);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10. Two runs of every command into separate directories, compared byte for byte.
Outcome criterion_determinism(const std::string& exe, const fs::path& problems, const fs::path& scratch) {
  struct Command {
    std::string name, args;
  };
  const std::vector<Command> commands{
      {"validate", "validate " + (problems / "p2_a1.yaml").string()},
      {"validate_invalid", "validate " + (problems / "triangle_not_smooth.yaml").string()},
      {"check", "check " + (problems / "p2_a3_10.yaml").string()},
      {"solve_interval", "solve " + (problems / "interval_transport.yaml").string()},
      {"solve_plane", "solve " + (problems / "p2_zero_boundary.yaml").string()},
      {"solve_square", "solve " + (problems / "square_product.yaml").string() + " --grid 33 --tol 1e-3"},
      {"lab_convexity", "lab convexity --samples 2000 --seed 7"},
      {"lab_thresholds", "lab thresholds --seed 7"},
      {"lab_regmax", "lab regmax --seed 7"},
      {"lab_legendre", "lab legendre --samples 1000 --seed 7"},
  };
  int files = 0;
  std::string differing;
  for (const auto& c : commands) {
    const fs::path d1 = scratch / (c.name + ".1"), d2 = scratch / (c.name + ".2");
    fs::remove_all(d1);
    fs::remove_all(d2);
    for (const auto& d : {d1, d2}) {
      const std::string cmd = "\"" + exe + "\" " + c.args + " --out \"" + d.string() + "\" > /dev/null 2>&1";
      [[maybe_unused]] const int code = std::system(cmd.c_str());
    }
    std::vector<fs::path> names;
    if (fs::exists(d1))
      for (const auto& e : fs::directory_iterator(d1)) names.push_back(e.path().filename());
    if (names.empty()) differing += c.name + " (no output) ";
    for (const auto& n : names) {
      const std::string ext = n.extension().string();
      if (ext != ".json" && ext != ".csv") continue;
      ++files;
      if (!fs::exists(d2 / n) || slurp(d1 / n) != slurp(d2 / n)) differing += c.name + "/" + n.string() + " ";
    }
  }
  return {differing.empty() && files > 0,
          std::to_string(commands.size()) + " commands, " + std::to_string(files) + " JSON/CSV files compared" +
              (differing.empty() ? ", all identical" : ", differing: " + differing)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <toricj executable> <problems dir> <scratch dir>\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path problems = argv[2], scratch = argv[3];
  fs::create_directories(scratch);

  int failed = 0;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << " (" << o.detail
              << ")" << std::endl;
  };

  report(1, "plane criterion flips exactly at a = 1/3", criterion_plane_threshold);
  report(2, "c_X from mixed derivative equals facet formula", criterion_c_X);

  std::optional<Benchmark> interval, square;
  report(3, "interval flow against transport oracle", [&] {
    interval = run_benchmark(kInterval);
    return criterion_interval(*interval);
  });
  report(4, "product benchmark order and flow accuracy", [&] {
    square = run_benchmark(kSquare);
    return criterion_product(*square);
  });
  report(5, "energy E and dJ non-increasing on both benchmarks", [&] {
    if (!interval || !square) return Outcome{false, "a benchmark did not run"};
    return criterion_energy(*interval, *square);
  });
  report(6, "convexity suite, 10^4 samples", criterion_convexity);
  report(7, "threshold closed forms", criterion_thresholds);
  report(8, "Legendre identities, 10^3 samples", [] { return criterion_suite("legendre", 1000); });
  report(9, "regularized maximum suite, 10^4 samples", [] { return criterion_suite("regmax", 10000); });
  report(10, "repeated runs give byte-identical JSON and CSV",
         [&] { return criterion_determinism(exe, problems, scratch); });

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
