#include "ppct/ct_fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppct/euler_fv.hpp"

namespace ppct {

namespace {

const Vec3& get_self(const Vec3& v) { return v; }
const Vec3& get_B(const MagKin& s) { return s.B; }
const Vec3& get_cell_B(const CellState& s) { return s.B; }

double kinetic(const CellState& s) { return 0.5 * norm2(s.m) / s.rho; }

}  // namespace

Vec3 electric_field(const Vec3& B, const Vec3& v) { return cross(B, v); }

Field<Vec3> discrete_curl(const Field<Vec3>& field) {
  Field<Vec3> out(field.geometry());
  field.for_interior([&](int, int, int, std::size_t idx) { out[idx] = curl_at(field, idx, get_self); });
  return out;
}

Field<double> discrete_divergence(const Field<Vec3>& field) {
  Field<double> out(field.geometry());
  field.for_interior(
      [&](int, int, int, std::size_t idx) { out[idx] = divergence_at(field, idx, get_self); });
  return out;
}

Field<double> discrete_divergence(const FieldGrid& field) {
  Field<double> out(field.geometry());
  field.for_interior(
      [&](int, int, int, std::size_t idx) { out[idx] = divergence_at(field, idx, get_cell_B); });
  return out;
}

Field<MagKin> ct_rhs(const Field<MagKin>& state, const Field<double>& rho) {
  const GridGeometry& g = state.geometry();
  Field<Vec3> omega(g);
  state.for_extended(1, [&](int, int, int, std::size_t idx) {
    omega[idx] = electric_field(state[idx].B, state[idx].v);
  });
  Field<MagKin> psi(g);
  state.for_interior([&](int i, int j, int k, std::size_t idx) {
    const double r = rho[idx];
    if (!(r > 0.0)) throw NonPhysicalState("non-positive density in CT update at " + cell_label(i, j, k));
    const Vec3 curl_b = curl_at(state, idx, get_B);
    psi[idx].B = curl_at(omega, idx, get_self);
    psi[idx].v = (1.0 / r) * cross(state[idx].B, curl_b);
  });
  return psi;
}

CtResult ct_solve(const FieldGrid& field, double dt, const BoundarySpec& spec,
                  const CtOptions& opts) {
  const GridGeometry& g = field.geometry();
  Field<double> rho(g, 1.0);
  Field<MagKin> rn(g);
  field.for_interior([&](int i, int j, int k, std::size_t idx) {
    const CellState& s = field[idx];
    if (!(s.rho > 0.0)) throw NonPhysicalState("non-positive density in CT update at " + cell_label(i, j, k));
    rho[idx] = s.rho;
    rn[idx] = {s.B, (1.0 / s.rho) * s.m};
  });

  IterationReport report;
  Field<MagKin> rk = rn;
  Field<MagKin> mid(g);
  Field<MagKin> next(g);
  while (report.iterations < opts.max_iter) {
    rn.for_interior([&](int, int, int, std::size_t idx) {
      mid[idx].B = 0.5 * (rn[idx].B + rk[idx].B);
      mid[idx].v = 0.5 * (rn[idx].v + rk[idx].v);
    });
    apply_boundaries(mid, spec);
    const Field<MagKin> psi = ct_rhs(mid, rho);
    double err = 0.0;
    rn.for_interior([&](int, int, int, std::size_t idx) {
      next[idx].B = rn[idx].B - dt * psi[idx].B;
      next[idx].v = rn[idx].v - dt * psi[idx].v;
      err = std::max({err, norm_inf(next[idx].B - rk[idx].B), norm_inf(next[idx].v - rk[idx].v)});
    });
    std::swap(rk, next);
    ++report.iterations;
    report.history.push_back(err);
    report.final_error = err;
    if (!std::isfinite(err)) break;
    if (err < opts.tol) {
      report.converged = true;
      break;
    }
  }
  if (!report.converged) {
    std::ostringstream os;
    os << "CT fixed-point iteration did not converge in " << report.iterations
       << " iterations (last error " << report.final_error << ", dt " << dt << ")";
    throw ConvergenceFailure(os.str(), report);
  }

  FieldGrid after = field;
  field.for_interior([&](int, int, int, std::size_t idx) {
    after[idx].B = rk[idx].B;
    after[idx].m = rho[idx] * rk[idx].v;
  });
  return {update_energy(field, after), report};
}

FieldGrid update_energy(const FieldGrid& before, const FieldGrid& after) {
  FieldGrid out = after;
  before.for_interior([&](int i, int j, int k, std::size_t idx) {
    const CellState& b = before[idx];
    const CellState& a = after[idx];
    if (a.rho != b.rho)
      throw InvariantViolation("density changed across the magnetic substep at " + cell_label(i, j, k));
    out[idx].E = b.E - kinetic(b) + kinetic(a);
  });
  return out;
}

double contraction_bound(const FieldGrid& field, double dt) {
  const GridGeometry& g = field.geometry();
  std::array<double, 3> alpha{0.0, 0.0, 0.0};
  field.for_interior([&](int, int, int, std::size_t idx) {
    const CellState& s = field[idx];
    const Vec3 v = (1.0 / s.rho) * s.m;
    const double sq = std::sqrt(s.rho);
    for (int a = 0; a < g.dim; ++a) {
      const Vec3& p = field[idx + field.stride(a)].B;
      const Vec3& m = field[idx - field.stride(a)].B;
      double mag = norm1(s.B);
      for (int c = 0; c < 3; ++c)
        if (c != a) mag += std::abs(0.5 * (p[c] - m[c]));
      alpha[a] = std::max(alpha[a], norm1(v) + mag / sq);
    }
  });
  double sum = 0.0;
  for (int a = 0; a < g.dim; ++a) sum += alpha[a] / g.d(a);
  return 0.5 * dt * sum;
}

}  // namespace ppct
