#pragma once

// Human-readable and JSON reports for each command, and CSV output of flow
// traces and grid snapshots. Exact quantities appear as "p/q" together with a
// 20-significant-digit decimal; floating values use the shortest round-trip
// rendering, so identical runs give identical bytes.

#include "toricj/pipeline.hpp"
#include "toricj/property_lab.hpp"

#include <ostream>
#include <string>

namespace toricj {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

std::string validation_text(const ProblemFile& file, const ValidationOutcome& v);
std::string validation_json(const ProblemFile& file, const ValidationOutcome& v);

std::string check_text(const ProblemFile& file, const CheckOutcome& c);
std::string check_json(const ProblemFile& file, const CheckOutcome& c);

std::string solve_text(const ProblemFile& file, const CheckOutcome& c, const SolverSettings& settings,
                       const SolveOutcome& s);
std::string solve_json(const ProblemFile& file, const CheckOutcome& c, const SolverSettings& settings,
                       const SolveOutcome& s);

std::string lab_text(const lab::SuiteReport& r);
std::string lab_json(const lab::SuiteReport& r);

/// Columns step,t,dt,res_sup,res_l2,E,dJ.
void write_trace_csv(std::ostream& out, const FlowTrace& trace);

/// One row per active node: coordinates, u, h = h_can + u and the residual
/// (empty on the frozen ring).
void write_grid_csv(std::ostream& out, const ProblemSpec& problem, const PotentialGrid& grid);

}  // namespace toricj
