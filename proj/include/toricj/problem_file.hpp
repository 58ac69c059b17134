#pragma once

// Problem files: YAML documents with exact rationals written as strings.
//
//   version: 1
//   fan:
//     normals: [[1, 0], [0, 1], [-1, -1]]
//   offsets_beta: ["0", "0", "1"]
//   offsets_alpha: ["0", "0", "1"]
//   a_v: ["1", "0"]
//   c: "5/3"                 # optional, defaults to c_X
//   solver: {grid: 129, margin: "1/50", tol: 1e-6, max_steps: 2000, seed: 42,
//            scheme: implicit, boundary: oracle, deep_margin: "1/10"}
//   output: {dir: out}
//
// Unknown keys are rejected; every error carries the line and column.

#include "toricj/dual_solver.hpp"
#include "toricj/toric_core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace toricj {

class ParseError : public std::runtime_error {
 public:
  /// `line` and `column` are 1-based; 0 means unknown.
  ParseError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_, column_;
  std::string message_;
};

enum class BoundaryData { Oracle, Zero };
std::string to_string(BoundaryData b);

struct SolverSettings {
  int grid = 129;
  Rational margin{1, 50};
  double tol = 1e-8;
  int max_steps = 2000;
  std::uint64_t seed = 42;
  FlowScheme scheme = FlowScheme::LinearlyImplicit;
  BoundaryData boundary = BoundaryData::Zero;
  /// Depth {ℓ_i ≥ deep_margin} of the region used for oracle comparisons.
  Rational deep_margin{1, 10};
};

struct ProblemFile {
  std::string source;  ///< path or label used in messages
  int version = 1;
  Fan fan;
  QVector offsets_beta, offsets_alpha, a_v;
  std::optional<Rational> c;
  SolverSettings solver;
  std::string output_dir;
};

ProblemFile parse_problem_text(const std::string& text, const std::string& source = "<input>");
/// Throws ParseError, including when the file cannot be read.
ProblemFile parse_problem_file(const std::string& path);

}  // namespace toricj
