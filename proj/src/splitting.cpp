#include "ppct/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppct/diagnostics.hpp"

namespace ppct {

RunConfig RunConfig::with_q(double q, GasModel gas) {
  RunConfig c;
  c.gas = gas;
  c.q = q;
  c.cfl = 2.0 / q;
  return c;
}

void RunConfig::validate() const {
  std::ostringstream os;
  if (!(q > 2.0)) os << "q must be > 2, got " << q;
  else if (!(cfl > 0.0) || cfl > 2.0 / q) os << "cfl must lie in (0, 2/q] = (0, " << 2.0 / q << "], got " << cfl;
  else if (!(safety > 0.0) || safety > 1.0) os << "safety must lie in (0, 1], got " << safety;
  else if (!(eps_tol > 0.0)) os << "eps_tol must be positive, got " << eps_tol;
  else if (max_ct_iter < 1) os << "max_ct_iter must be >= 1, got " << max_ct_iter;
  else if (!(t_end >= 0.0)) os << "t_end must be >= 0, got " << t_end;
  else if (max_halvings < 0) os << "max_halvings must be >= 0";
  if (!os.str().empty()) throw ConfigurationError(os.str());
}

double select_dt(const FieldGrid& field, const RunConfig& cfg, const BoundarySpec& spec, double t,
                 double t_target) {
  FieldGrid work = field;
  apply_boundaries(work, spec);
  const double rate = compute_wave_speeds(work, cfg.gas).rate(work.geometry());
  if (!(rate > 0.0)) throw ConfigurationError("all wave speeds vanish; time step undefined");
  double dt = cfg.safety * cfg.cfl / rate;
  if (t + dt > t_target) dt = t_target - t;
  return dt;
}

namespace {

StepResult attempt_step(const FieldGrid& field, double t, double dt, const RunConfig& cfg,
                        const BoundarySpec& spec) {
  const FvOptions fv = cfg.fv();
  FieldGrid a = euler_ssprk2_step(field, 0.5 * dt, spec, fv, cfg.gas);
  apply_boundaries(a, spec);
  const double bound = contraction_bound(a, dt);
  CtResult b = ct_solve(a, dt, spec, cfg.ct());
  FieldGrid c = euler_ssprk2_step(b.field, 0.5 * dt, spec, fv, cfg.gas);
  apply_boundaries(c, spec);

  StepRecord r;
  r.t = t + dt;
  r.dt = dt;
  r.ct_iterations = b.report.iterations;
  r.contraction = bound;
  r.ct_report = std::move(b.report);
  const PositivityReport pos = positivity_report(c, cfg.gas);
  r.min_rho = pos.min_rho;
  r.min_p = pos.min_p;
  r.max_abs_divB = divergence_report(c).max_abs;
  const Totals tot = totals(c);
  r.total_mass = tot.mass;
  r.total_energy = tot.total_energy;
  return {std::move(c), std::move(r)};
}

}  // namespace

StepResult ppct_step(const FieldGrid& field, double t, double dt, const RunConfig& cfg,
                     const BoundarySpec& spec) {
  std::string last;
  double h = dt;
  for (int attempt = 0; attempt <= cfg.max_halvings; ++attempt, h *= 0.5) {
    try {
      StepResult res = attempt_step(field, t, h, cfg, spec);
      res.record.rejections = attempt;
      return res;
    } catch (const StepRejected& e) {
      last = e.what();
    } catch (const ConvergenceFailure& e) {
      last = e.what();
    }
  }
  std::ostringstream os;
  os << "step at t=" << t << " failed after " << cfg.max_halvings
     << " halvings of dt=" << dt << ": " << last;
  throw RunAborted(os.str());
}

RunResult run(const FieldGrid& initial, const BoundarySpec& spec, const RunConfig& cfg,
              const RunHooks& hooks) {
  cfg.validate();
  RunResult out;

  std::vector<double> targets;
  for (double s : cfg.snapshot_times)
    if (s > 0.0 && s < cfg.t_end) targets.push_back(s);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (cfg.t_end > 0.0) targets.push_back(cfg.t_end);

  FieldGrid field = initial;
  apply_boundaries(field, spec);
  const double d0 = scaled_divergence(field, spec);
  if (d0 > 1e-12) {
    std::ostringstream os;
    os << "initial field is not discretely divergence free (scaled max |div B| = " << d0 << ")";
    out.warnings.push_back(os.str());
  }

  auto emit = [&](double t) {
    Snapshot s{t, field};
    if (hooks.on_snapshot) hooks.on_snapshot(s);
    if (hooks.keep_snapshots) out.snapshots.push_back(std::move(s));
  };
  emit(0.0);

  double t = 0.0;
  for (double target : targets) {
    while (t < target) {
      const double dt = select_dt(field, cfg, spec, t, target);
      StepResult res = ppct_step(field, t, dt, cfg, spec);
      t = res.record.t;
      if (target - t <= 1e-14 * std::max(1.0, target)) t = target;
      res.record.t = t;
      field = std::move(res.field);
      if (hooks.on_step) hooks.on_step(res.record);
      out.records.push_back(std::move(res.record));
    }
    emit(t);
  }
  return out;
}

RunResult run(const ProblemSpec& problem, const GridGeometry& geom, const RunConfig& cfg,
              const RunHooks& hooks) {
  return run(problem.initial_field(geom, cfg.gas), problem.boundary, cfg, hooks);
}

}  // namespace ppct
