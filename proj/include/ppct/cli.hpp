#pragma once
//========================================================================================
// Configuration parsing, file output, convergence study and the quick invariant suite
// behind the `ppct` command line tool.
//========================================================================================

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ppct/problems.hpp"
#include "ppct/splitting.hpp"

namespace ppct {

//----------------------------------------------------------------------------------------
// Configuration

struct OutputPlan {
  std::string out_dir = "output";
};

struct RunPlan {
  std::string problem_name;
  ProblemParams params;
  ProblemSpec problem;
  RunConfig config;
  std::array<int, 3> n{1, 1, 1};
  OutputPlan output;

  GridGeometry geometry() const { return problem.geometry(n[0], n[1], n[2]); }
};

// `key = value` lines, '#' starts a comment.
RunPlan parse_config(const std::string& text);
RunPlan load_config(const std::string& path);
// Resolved configuration in the same grammar; parsing it reproduces the plan exactly.
std::string manifest_text(const RunPlan& plan);

//----------------------------------------------------------------------------------------
// Files

void write_snapshot(const FieldGrid& field, double t, const std::string& path, const GasModel& gas,
                    const BoundarySpec& spec);
Snapshot read_snapshot(const std::string& path);
void write_diagnostics(const std::vector<StepRecord>& records, const std::string& path);
void write_text(const std::string& text, const std::string& path);

struct RunOutcome {
  RunResult result;
  std::string diagnostics_path;
  std::vector<std::string> snapshot_paths;
};
// Runs the plan, writing snapshots, diagnostics and the manifest under out_dir. On a
// solver failure the diagnostics gathered so far are written before rethrowing.
RunOutcome execute_plan(const RunPlan& plan);

//----------------------------------------------------------------------------------------
// Vortex convergence study

struct ConvergenceRow {
  int n = 0;
  VortexErrors errors;
  int steps = 0;
  double mean_ct_iterations = 0.0;
  int max_ct_iterations = 0;
  double min_p = 0.0;
};

struct ConvergenceTable {
  double mu = 1.0;
  double q = 3.0;
  std::vector<ConvergenceRow> rows;

  std::vector<double> orders(bool magnetic, int norm) const;  // norm: 1, 2, or 0 for inf
};

ConvergenceTable vortex_convergence(double mu, const std::vector<int>& grids, double q,
                                    double t_end = 0.05, double cfl = 0.0);
std::string format_table(const ConvergenceTable& table);

//----------------------------------------------------------------------------------------
// Random fields and the quick invariant suite

PrimitiveState random_primitive(std::mt19937_64& rng);
FieldGrid random_field(const GridGeometry& g, std::mt19937_64& rng, const GasModel& gas);
// Sum of a few low Fourier modes on the periodic box; admissible and smooth.
FieldGrid random_smooth_field(const GridGeometry& g, std::mt19937_64& rng, const GasModel& gas);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};
std::vector<CheckResult> run_checks();

}  // namespace ppct
