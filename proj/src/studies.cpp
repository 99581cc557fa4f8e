#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "ppct/cli.hpp"
#include "ppct/ct_fd.hpp"
#include "ppct/diagnostics.hpp"

namespace ppct {

//----------------------------------------------------------------------------------------
// Convergence study

std::vector<double> ConvergenceTable::orders(bool magnetic, int norm) const {
  std::vector<double> err;
  for (const ConvergenceRow& r : rows) {
    const NormTriple& e = magnetic ? r.errors.B : r.errors.v;
    err.push_back(norm == 1 ? e.l1 : norm == 2 ? e.l2 : e.linf);
  }
  return convergence_order(err);
}

ConvergenceTable vortex_convergence(double mu, const std::vector<int>& grids, double q,
                                    double t_end, double cfl) {
  ConvergenceTable table;
  table.mu = mu;
  table.q = q;
  const ProblemSpec p = vortex(mu);
  for (int n : grids) {
    RunConfig cfg = RunConfig::with_q(q, p.gas);
    if (cfl > 0.0) cfg.cfl = cfl;
    cfg.t_end = t_end;
    FieldGrid final_field;
    RunHooks hooks;
    hooks.keep_snapshots = false;
    hooks.on_snapshot = [&](const Snapshot& s) { final_field = s.field; };
    const RunResult res = run(p, p.geometry(n, n), cfg, hooks);

    ConvergenceRow row;
    row.n = n;
    row.errors = exact_vortex_error(final_field, t_end, mu);
    row.steps = static_cast<int>(res.records.size());
    row.min_p = positivity_report(p.initial_field(p.geometry(n, n)), p.gas).min_p;
    double sum = 0.0;
    for (const StepRecord& r : res.records) {
      sum += r.ct_iterations;
      row.max_ct_iterations = std::max(row.max_ct_iterations, r.ct_iterations);
      row.min_p = std::min(row.min_p, r.min_p);
    }
    row.mean_ct_iterations = res.records.empty() ? 0.0 : sum / res.records.size();
    table.rows.push_back(row);
  }
  return table;
}

std::string format_table(const ConvergenceTable& t) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "# vortex mu=%.10g q=%.6g\n", t.mu, t.q);
  os << buf;
  os << "#    N   field        l1   order        l2   order      linf   order  ct_mean ct_max     min_p\n";
  const std::vector<double> ob[3] = {t.orders(true, 1), t.orders(true, 2), t.orders(true, 0)};
  const std::vector<double> ov[3] = {t.orders(false, 1), t.orders(false, 2), t.orders(false, 0)};
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const ConvergenceRow& row = t.rows[r];
    for (int f = 0; f < 2; ++f) {
      const NormTriple& e = f == 0 ? row.errors.B : row.errors.v;
      const auto& o = f == 0 ? ob : ov;
      const double vals[3] = {e.l1, e.l2, e.linf};
      std::snprintf(buf, sizeof buf, "%6d  %6s", row.n, f == 0 ? "B" : "v");
      os << buf;
      for (int k = 0; k < 3; ++k) {
        if (r == 0) std::snprintf(buf, sizeof buf, "  %.3e       -", vals[k]);
        else std::snprintf(buf, sizeof buf, "  %.3e  %6.3f", vals[k], o[k][r - 1]);
        os << buf;
      }
      if (f == 0)
        std::snprintf(buf, sizeof buf, "  %7.2f %6d  %.3e\n", row.mean_ct_iterations,
                      row.max_ct_iterations, row.min_p);
      else
        std::snprintf(buf, sizeof buf, "\n");
      os << buf;
    }
  }
  return os.str();
}

//----------------------------------------------------------------------------------------
// Random fields

PrimitiveState random_primitive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> logu(-3.0, 3.0), vel(-3.0, 3.0);
  PrimitiveState w;
  w.rho = std::exp(logu(rng));
  w.v = {vel(rng), vel(rng), vel(rng)};
  w.p = std::exp(logu(rng));
  return w;
}

FieldGrid random_field(const GridGeometry& g, std::mt19937_64& rng, const GasModel& gas) {
  std::uniform_real_distribution<double> bu(-2.0, 2.0);
  FieldGrid f(g);
  f.for_interior([&](int, int, int, std::size_t idx) {
    const PrimitiveState w = random_primitive(rng);
    f[idx] = make_cell(w, Vec3{bu(rng), bu(rng), bu(rng)}, gas);
  });
  return f;
}

FieldGrid random_smooth_field(const GridGeometry& g, std::mt19937_64& rng, const GasModel& gas) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::uniform_real_distribution<double> u(-1.0, 1.0), phase(0.0, kTwoPi);
  struct Mode {
    std::array<int, 3> k;
    double phi;
    double amp;
  };
  auto modes = [&](int count) {
    std::uniform_int_distribution<int> kd(-2, 2);
    std::vector<Mode> m;
    for (int i = 0; i < count; ++i) {
      Mode md{{kd(rng), kd(rng), g.dim == 3 ? kd(rng) : 0}, phase(rng), u(rng)};
      m.push_back(md);
    }
    return m;
  };
  auto eval = [&](const std::vector<Mode>& m, const Vec3& x) {
    double s = 0.0;
    for (const Mode& md : m) {
      double arg = md.phi;
      for (int a = 0; a < 3; ++a) arg += kTwoPi * md.k[a] * (x[a] - g.origin[a]) / g.extent[a];
      s += md.amp * std::sin(arg);
    }
    return s / static_cast<double>(m.size());
  };

  const auto mr = modes(3), mp = modes(3);
  std::array<std::vector<Mode>, 3> mv{modes(3), modes(3), modes(3)};
  std::array<std::vector<Mode>, 3> ma{modes(3), modes(3), modes(3)};
  const Vec3 b0{u(rng), u(rng), u(rng)};

  Field<Vec3> A(g);
  A.for_interior([&](int i, int j, int k, std::size_t idx) {
    const Vec3 x = g.center(i, j, k);
    for (int a = 0; a < 3; ++a) A[idx][a] = 0.3 * eval(ma[a], x);
  });
  apply_boundaries(A, BoundarySpec::all(Periodic{}));
  const Field<Vec3> curl = discrete_curl(A);

  FieldGrid f(g);
  f.for_interior([&](int i, int j, int k, std::size_t idx) {
    const Vec3 x = g.center(i, j, k);
    PrimitiveState w;
    w.rho = 1.0 + 0.5 * eval(mr, x);
    w.p = 1.0 + 0.5 * eval(mp, x);
    for (int a = 0; a < 3; ++a) w.v[a] = 0.5 * eval(mv[a], x);
    f[idx] = make_cell(w, b0 + curl[idx], gas);
  });
  return f;
}

//----------------------------------------------------------------------------------------
// Quick invariant suite

namespace {

CheckResult check_gql(std::mt19937_64& rng) {
  const GasModel gas;
  std::normal_distribution<double> nd(0.0, 2.0);
  double worst = 0.0;
  bool ok = true;
  for (int n = 0; n < 1000; ++n) {
    const PrimitiveState w = random_primitive(rng);
    const EulerState q = prim_to_cons(w, gas);
    const double at_min = gql_dot(q, {(1.0 / q.rho) * q.m});
    const double rho_e = internal_energy(q);
    worst = std::max(worst, std::abs(at_min - rho_e) / rho_e);
    const Vec3 vs{nd(rng), nd(rng), nd(rng)};
    if (gql_dot(q, {vs}) < at_min - 1e-12 * std::abs(q.E)) ok = false;
  }
  ok = ok && worst <= 1e-12;
  return {"gql minimum at m/rho", ok, "max relative mismatch " + std::to_string(worst)};
}

CheckResult check_limiter(std::mt19937_64& rng) {
  const GasModel gas;
  std::uniform_real_distribution<double> u(-1.0, 1.0), w01(0.05, 1.0), qd(2.01, 6.0);
  int failures = 0;
  for (int n = 0; n < 1000; ++n) {
    const PrimitiveState avg = random_primitive(rng);
    const double q = qd(rng);
    SlopePair s;
    std::array<double, 3> c{w01(rng), w01(rng), 0.0};
    const double cs = c[0] + c[1];
    c[0] /= cs;
    c[1] /= cs;
    for (int a = 0; a < 2; ++a) {
      s.axis[a].rho = 2.0 * avg.rho * u(rng);
      s.axis[a].p = 2.0 * avg.p * u(rng);
      s.axis[a].v = {3.0 * u(rng), 3.0 * u(rng), 3.0 * u(rng)};
    }
    const LimiterCoefficients lc = pp_limit(avg, s, c, 2, q, gas);
    const FaceStates fs = limited_interface_states(avg, s, lc, 2);
    for (int a = 0; a < 2; ++a)
      if (!(fs.lo[a].rho > 0 && fs.hi[a].rho > 0 && fs.lo[a].p > 0 && fs.hi[a].p > 0)) ++failures;
    Vec3 cross_term;
    double vel = 0.0;
    for (int a = 0; a < 2; ++a) {
      cross_term += (c[a] * lc.alpha[a] * s.axis[a].rho) * s.axis[a].v;
      vel += c[a] * norm2(s.axis[a].v);
    }
    const double lhs =
        (2.0 * norm2(cross_term) + (q - 2.0) * avg.rho * avg.rho * vel) * lc.beta * lc.beta;
    const double rhs = (q - 2.0) * (q - 2.0) * avg.rho * avg.p / (gas.gamma() - 1.0);
    if (lhs > rhs * (1.0 + 1e-12)) ++failures;
  }
  return {"limiter positivity and slope inequality", failures == 0,
          std::to_string(failures) + " failures in 1000 cells"};
}

CheckResult check_forward_euler(std::mt19937_64& rng) {
  const GasModel gas;
  const GridGeometry g = GridGeometry::make_2d(4, 4, 0.0, 1.0, 0.0, 1.0);
  const BoundarySpec spec = BoundarySpec::all(Periodic{});
  int failures = 0;
  std::string detail;
  for (int n = 0; n < 100; ++n) {
    FieldGrid f = random_field(g, rng, gas);
    apply_boundaries(f, spec);
    FvOptions opts;
    const double dt = 1.0 / (opts.q * compute_wave_speeds(f, gas).rate(g));
    try {
      const FieldGrid out = euler_forward_step(f, dt, spec, opts, gas);
      if (positivity_report(out, gas).min_p <= 0.0) ++failures;
    } catch (const Error& e) {
      ++failures;
      detail = e.what();
    }
  }
  return {"forward Euler positivity on random fields", failures == 0,
          std::to_string(failures) + " failures in 100 fields" + (detail.empty() ? "" : ": " + detail)};
}

CheckResult check_ct(std::mt19937_64& rng) {
  const GasModel gas;
  const GridGeometry g = GridGeometry::make_2d(8, 8, 0.0, 1.0, 0.0, 1.0);
  const BoundarySpec spec = BoundarySpec::all(Periodic{});
  FieldGrid f = random_smooth_field(g, rng, gas);
  apply_boundaries(f, spec);
  const CtResult r = ct_solve(f, 0.01, spec);
  double de = 0.0;
  f.for_interior([&](int, int, int, std::size_t idx) {
    const double e0 = internal_energy(f[idx].euler());
    de = std::max(de, std::abs(internal_energy(r.field[idx].euler()) - e0) / e0);
  });
  const double e0 = totals(f).total_energy, e1 = totals(r.field).total_energy;
  const double drift = std::abs(e1 - e0) / std::abs(e0);
  const double ddf = scaled_divergence(r.field, spec);
  const bool ok = r.report.converged && de <= 1e-13 && drift <= 1e-9 && ddf <= 1e-11;
  std::ostringstream os;
  os << "iterations " << r.report.iterations << ", internal energy change " << de
     << ", total energy drift " << drift << ", scaled div " << ddf;
  return {"magnetic substep invariants", ok, os.str()};
}

CheckResult check_roundtrip(std::mt19937_64& rng) {
  const GasModel gas;
  const GridGeometry g = GridGeometry::make_2d(3, 2, -1.0, 1.0, 0.0, 0.5);
  const FieldGrid f = random_field(g, rng, gas);
  const auto path = std::filesystem::temp_directory_path() /
                    ("ppct_check_" + std::to_string(rng()) + ".dat");
  write_snapshot(f, 0.25, path.string(), gas, BoundarySpec::all(Outflow{}));
  const Snapshot s = read_snapshot(path.string());
  std::filesystem::remove(path);
  double worst = 0.0;
  auto rel = [&](double a, double b) {
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
  };
  f.for_interior([&](int, int, int, std::size_t idx) {
    const CellState &a = f[idx], &b = s.field[idx];
    rel(a.rho, b.rho);
    rel(a.E, b.E);
    for (int c = 0; c < 3; ++c) {
      rel(a.m[c], b.m[c]);
      rel(a.B[c], b.B[c]);
    }
  });
  return {"snapshot round trip", worst <= 1e-14 && s.t == 0.25,
          "max relative difference " + std::to_string(worst)};
}

CheckResult check_determinism() {
  const ProblemSpec p = orszag_tang();
  RunConfig cfg = RunConfig::with_q(3.0, p.gas);
  cfg.t_end = 0.02;
  const GridGeometry g = p.geometry(8, 8);
  const RunResult a = run(p, g, cfg), b = run(p, g, cfg);
  const bool ok = a.snapshots.back().field.raw() == b.snapshots.back().field.raw() &&
                  a.records.size() == b.records.size();
  return {"determinism", ok, std::to_string(a.records.size()) + " steps compared bitwise"};
}

}  // namespace

std::vector<CheckResult> run_checks() {
  std::mt19937_64 rng(20240611);
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };
  guarded("gql minimum at m/rho", [&] { return check_gql(rng); });
  guarded("limiter positivity and slope inequality", [&] { return check_limiter(rng); });
  guarded("forward Euler positivity on random fields", [&] { return check_forward_euler(rng); });
  guarded("magnetic substep invariants", [&] { return check_ct(rng); });
  guarded("snapshot round trip", [&] { return check_roundtrip(rng); });
  guarded("determinism", [] { return check_determinism(); });
  return out;
}

}  // namespace ppct
