#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "ppct/cli.hpp"
#include "ppct/ct_fd.hpp"

namespace ppct {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw Error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  return f;
}

void finish(FilePtr f, const std::string& path) {
  std::FILE* raw = f.release();
  const bool bad = std::ferror(raw) != 0;
  if (std::fclose(raw) != 0 || bad) throw Error("write to '" + path + "' failed");
}

}  // namespace

void write_snapshot(const FieldGrid& field, double t, const std::string& path, const GasModel& gas,
                    const BoundarySpec& spec) {
  const GridGeometry& g = field.geometry();
  FieldGrid work = field;
  apply_boundaries(work, spec);
  const Field<double> div = discrete_divergence(work);
  const double gm1 = gas.gamma() - 1.0;

  FilePtr f = open_for_write(path);
  std::FILE* out = f.get();
  std::fprintf(out, "# t=%.17g dim=%d nx=%d ny=%d nz=%d", t, g.dim, g.n[0], g.n[1], g.n[2]);
  const char* axes = "xyz";
  for (int a = 0; a < 3; ++a)
    std::fprintf(out, " %c0=%.17g %c1=%.17g", axes[a], g.origin[a], axes[a], g.origin[a] + g.extent[a]);
  std::fprintf(out, " gamma=%.17g | x y%s rho vx vy vz Bx By Bz p E divB\n", gas.gamma(),
               g.dim == 3 ? " z" : "");
  field.for_interior([&](int i, int j, int k, std::size_t idx) {
    const CellState& s = field[idx];
    const Vec3 x = g.center(i, j, k);
    const Vec3 v = (1.0 / s.rho) * s.m;
    const double p = gm1 * (s.E - 0.5 * dot(s.m, v));
    std::fprintf(out, "%.17g %.17g", x[0], x[1]);
    if (g.dim == 3) std::fprintf(out, " %.17g", x[2]);
    std::fprintf(out, " %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", s.rho, v[0],
                 v[1], v[2], s.B[0], s.B[1], s.B[2], p, s.E, div[idx]);
  });
  finish(std::move(f), path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  std::string header;
  std::getline(in, header);
  if (header.rfind("#", 0) != 0) throw Error("snapshot '" + path + "' lacks a header line");
  const auto bar = header.find('|');
  std::istringstream hs(header.substr(1, bar == std::string::npos ? std::string::npos : bar - 1));
  std::map<std::string, double> tok;
  std::string item;
  while (hs >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    tok[item.substr(0, eq)] = std::strtod(item.c_str() + eq + 1, nullptr);
  }
  for (const char* k : {"t", "dim", "nx", "ny", "nz", "x0", "x1", "y0", "y1", "z0", "z1"})
    if (!tok.count(k)) throw Error("snapshot '" + path + "' header lacks '" + k + "'");

  GridGeometry g;
  g.dim = static_cast<int>(tok["dim"]);
  g.n = {static_cast<int>(tok["nx"]), static_cast<int>(tok["ny"]), static_cast<int>(tok["nz"])};
  g.origin = {tok["x0"], tok["y0"], tok["z0"]};
  g.extent = {tok["x1"] - tok["x0"], tok["y1"] - tok["y0"], tok["z1"] - tok["z0"]};
  Snapshot snap{tok["t"], FieldGrid(g)};

  const int ncoord = g.dim == 3 ? 3 : 2;
  std::size_t rows = 0;
  bool ok = true;
  snap.field.for_interior([&](int, int, int, std::size_t idx) {
    if (!ok) return;
    double c[3], rho, v[3], B[3], p, E, divb;
    for (int a = 0; a < ncoord; ++a) in >> c[a];
    in >> rho >> v[0] >> v[1] >> v[2] >> B[0] >> B[1] >> B[2] >> p >> E >> divb;
    if (!in) {
      ok = false;
      return;
    }
    CellState& s = snap.field[idx];
    s.rho = rho;
    s.m = rho * Vec3{v[0], v[1], v[2]};
    s.B = {B[0], B[1], B[2]};
    s.E = E;
    ++rows;
  });
  if (!ok || rows != g.interior_count())
    throw Error("snapshot '" + path + "' has " + std::to_string(rows) + " readable rows, expected " +
                std::to_string(g.interior_count()));
  return snap;
}

void write_diagnostics(const std::vector<StepRecord>& records, const std::string& path) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "# t dt ct_iters min_rho min_p max_divB mass total_energy\n");
  for (const StepRecord& r : records)
    std::fprintf(f.get(), "%.17g %.17g %d %.17g %.17g %.17g %.17g %.17g\n", r.t, r.dt,
                 r.ct_iterations, r.min_rho, r.min_p, r.max_abs_divB, r.total_mass,
                 r.total_energy);
  finish(std::move(f), path);
}

void write_text(const std::string& text, const std::string& path) {
  FilePtr f = open_for_write(path);
  std::fputs(text.c_str(), f.get());
  finish(std::move(f), path);
}

RunOutcome execute_plan(const RunPlan& plan) {
  namespace fs = std::filesystem;
  const fs::path dir(plan.output.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());

  RunOutcome outcome;
  outcome.diagnostics_path = (dir / "diagnostics.dat").string();
  write_text(manifest_text(plan), (dir / "manifest.txt").string());

  std::vector<StepRecord> records;
  RunHooks hooks;
  hooks.keep_snapshots = false;
  hooks.on_step = [&](const StepRecord& r) { records.push_back(r); };
  hooks.on_snapshot = [&](const Snapshot& s) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.dat", outcome.snapshot_paths.size());
    const std::string p = (dir / name).string();
    write_snapshot(s.field, s.t, p, plan.config.gas, plan.problem.boundary);
    outcome.snapshot_paths.push_back(p);
  };

  try {
    outcome.result = run(plan.problem, plan.geometry(), plan.config, hooks);
  } catch (...) {
    write_diagnostics(records, outcome.diagnostics_path);
    throw;
  }
  write_diagnostics(outcome.result.records, outcome.diagnostics_path);
  return outcome;
}

}  // namespace ppct
