#pragma once
//========================================================================================
// Strang-split driver: S_A(dt/2) o S_B(dt) o S_A(dt/2), time step selection, run loop.
//========================================================================================

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ppct/ct_fd.hpp"
#include "ppct/euler_fv.hpp"
#include "ppct/problems.hpp"

namespace ppct {

struct RunConfig {
  GasModel gas;
  double q = 3.0;
  double cfl = 2.0 / 3.0;
  double eps_tol = 1e-10;
  int max_ct_iter = 100;
  double t_end = 0.0;
  std::vector<double> snapshot_times;
  double safety = 1.0;
  double limiter_eps = kLimiterEps;
  int max_halvings = 5;

  // q with the matching default cfl = 2/q
  static RunConfig with_q(double q, GasModel gas = GasModel());
  void validate() const;
  FvOptions fv() const { return {q, limiter_eps, Reconstruction::VanAlbada}; }
  CtOptions ct() const { return {eps_tol, max_ct_iter}; }
};

struct StepRecord {
  double t = 0.0;  // time at the end of the step
  double dt = 0.0;
  int ct_iterations = 0;
  double min_rho = 0.0;
  double min_p = 0.0;
  double max_abs_divB = 0.0;
  double total_mass = 0.0;
  double total_energy = 0.0;
  int rejections = 0;
  double contraction = 0.0;
  IterationReport ct_report;
};

class RunAborted : public Error {
 public:
  using Error::Error;
};

double select_dt(const FieldGrid& field, const RunConfig& cfg, const BoundarySpec& spec,
                 double t = 0.0, double t_target = std::numeric_limits<double>::infinity());

struct StepResult {
  FieldGrid field;
  StepRecord record;
};

// One Strang step, retried with halved dt on a stage CFL rejection or a CT convergence
// failure. `t` is the time at the start of the step.
StepResult ppct_step(const FieldGrid& field, double t, double dt, const RunConfig& cfg,
                     const BoundarySpec& spec);

struct Snapshot {
  double t = 0.0;
  FieldGrid field;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepRecord> records;
  std::vector<std::string> warnings;
};

struct RunHooks {
  std::function<void(const Snapshot&)> on_snapshot;
  std::function<void(const StepRecord&)> on_step;
  bool keep_snapshots = true;
};

// Snapshots are taken at t = 0, at each requested time in (0, t_end), and at t_end.
RunResult run(const FieldGrid& initial, const BoundarySpec& spec, const RunConfig& cfg,
              const RunHooks& hooks = {});
RunResult run(const ProblemSpec& problem, const GridGeometry& geom, const RunConfig& cfg,
              const RunHooks& hooks = {});

}  // namespace ppct
