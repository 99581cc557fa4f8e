#include "ppct/euler_fv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ppct {

namespace {

// Cells whose limited face states differ from the average along each axis are converted
// back to conserved form; unlimited-flat axes reuse the stored average as is.
struct FaceValue {
  EulerState q;
  PrimitiveState w;
};

struct FaceCons {
  std::array<FaceValue, 3> lo{};
  std::array<FaceValue, 3> hi{};
};

bool zero_delta(const PrimDelta& d) {
  return d.rho == 0.0 && d.p == 0.0 && d.v[0] == 0.0 && d.v[1] == 0.0 && d.v[2] == 0.0;
}

double limit_factor(double avg, double delta, double eps) {
  if (delta == 0.0) return 1.0;
  return std::min(avg / (std::abs(delta) * (1.0 + eps)), 1.0);
}

}  // namespace

std::string cell_label(int i, int j, int k) {
  std::ostringstream os;
  os << "cell (" << i << ", " << j << ", " << k << ")";
  return os.str();
}

double WaveSpeeds::rate(const GridGeometry& g) const {
  double r = 0.0;
  for (int a = 0; a < dim; ++a) r += alpha[a] / g.d(a);
  return r;
}

std::array<double, 3> WaveSpeeds::weights(const GridGeometry& g) const {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  const double r = rate(g);
  for (int a = 0; a < dim; ++a) c[a] = (alpha[a] / g.d(a)) / r;
  return c;
}

bool LimiterCoefficients::inactive(int dim) const {
  if (beta != 1.0) return false;
  for (int a = 0; a < dim; ++a)
    if (alpha[a] != 1.0 || kappa[a] != 1.0) return false;
  return true;
}

//----------------------------------------------------------------------------------------

Field<PrimitiveState> primitives(const FieldGrid& field, const GasModel& gas) {
  const GridGeometry& g = field.geometry();
  Field<PrimitiveState> w(g);
  field.for_extended(g.ghost, [&](int i, int j, int k, std::size_t idx) {
    const EulerState q = field[idx].euler();
    if (!is_admissible(q))
      throw NonPhysicalState("inadmissible state at " + cell_label(i, j, k) + ": " + describe(q));
    w[idx] = cons_to_prim(q, gas);
  });
  return w;
}

WaveSpeeds compute_wave_speeds(const Field<PrimitiveState>& prims, const GasModel& gas) {
  const GridGeometry& g = prims.geometry();
  WaveSpeeds s;
  s.dim = g.dim;
  prims.for_extended(g.ghost, [&](int, int, int, std::size_t idx) {
    const PrimitiveState& w = prims[idx];
    const double c = sound_speed(w, gas);
    for (int a = 0; a < g.dim; ++a) s.alpha[a] = std::max(s.alpha[a], std::abs(w.v[a]) + c);
  });
  return s;
}

WaveSpeeds compute_wave_speeds(const FieldGrid& field, const GasModel& gas) {
  return compute_wave_speeds(primitives(field, gas), gas);
}

//----------------------------------------------------------------------------------------

double van_albada(double back, double fwd, double eps) {
  return ((fwd * fwd + eps) * back + (back * back + eps) * fwd) /
         (back * back + fwd * fwd + 2.0 * eps);
}

SlopePair van_albada_slopes_at(const Field<PrimitiveState>& prims, std::size_t idx) {
  const GridGeometry& g = prims.geometry();
  SlopePair s;
  const PrimitiveState& w0 = prims[idx];
  for (int a = 0; a < g.dim; ++a) {
    const double h = g.d(a);
    const double eps = 3.0 * h;
    const double half = 0.5 * h;
    const PrimitiveState& wm = prims[idx - prims.stride(a)];
    const PrimitiveState& wp = prims[idx + prims.stride(a)];
    auto delta = [&](double m, double c, double p) {
      return half * van_albada((c - m) / h, (p - c) / h, eps);
    };
    PrimDelta& d = s.axis[a];
    d.rho = delta(wm.rho, w0.rho, wp.rho);
    for (int c = 0; c < 3; ++c) d.v[c] = delta(wm.v[c], w0.v[c], wp.v[c]);
    d.p = delta(wm.p, w0.p, wp.p);
  }
  return s;
}

Field<SlopePair> van_albada_slopes(const FieldGrid& field, const GasModel& gas) {
  const Field<PrimitiveState> w = primitives(field, gas);
  Field<SlopePair> s(field.geometry());
  w.for_extended(1, [&](int, int, int, std::size_t idx) { s[idx] = van_albada_slopes_at(w, idx); });
  return s;
}

//----------------------------------------------------------------------------------------

LimiterCoefficients pp_limit(const PrimitiveState& avg, const SlopePair& slopes,
                             const std::array<double, 3>& weights, int dim, double q,
                             const GasModel& gas, double eps) {
  if (!is_admissible(avg)) {
    std::ostringstream os;
    os << "limiter called on inadmissible average rho=" << avg.rho << ", p=" << avg.p;
    throw NonPhysicalState(os.str());
  }
  LimiterCoefficients c;
  // Step 1 and 2: density and pressure
  for (int a = 0; a < dim; ++a) {
    c.alpha[a] = limit_factor(avg.rho, slopes.axis[a].rho, eps);
    c.kappa[a] = limit_factor(avg.p, slopes.axis[a].p, eps);
  }
  // Step 3: velocity
  bool any_dv = false;
  Vec3 mix;
  double spread = 0.0;
  for (int a = 0; a < dim; ++a) {
    const PrimDelta& d = slopes.axis[a];
    if (d.v[0] != 0.0 || d.v[1] != 0.0 || d.v[2] != 0.0) any_dv = true;
    mix += (weights[a] * c.alpha[a] * d.rho) * d.v;
    spread += weights[a] * norm2(d.v);
  }
  if (any_dv) {
    const double qm2 = q - 2.0;
    const double num = qm2 * qm2 * avg.rho * avg.p;
    const double den = (gas.gamma() - 1.0) * (2.0 * norm2(mix) + qm2 * avg.rho * avg.rho * spread);
    c.beta = std::min(std::sqrt(num / den), 1.0);
  }
  return c;
}

LimiterCoefficients pp_limit(const PrimitiveState& avg, const SlopePair& slopes,
                             const WaveSpeeds& speeds, const GridGeometry& g, double q,
                             const GasModel& gas, double eps) {
  return pp_limit(avg, slopes, speeds.weights(g), g.dim, q, gas, eps);
}

FaceStates limited_interface_states(const PrimitiveState& avg, const SlopePair& slopes,
                                    const LimiterCoefficients& coeffs, int dim) {
  FaceStates f;
  for (int a = 0; a < 3; ++a) {
    f.lo[a] = avg;
    f.hi[a] = avg;
  }
  for (int a = 0; a < dim; ++a) {
    const PrimDelta& d = slopes.axis[a];
    const double dr = coeffs.alpha[a] * d.rho;
    const Vec3 dv = coeffs.beta * d.v;
    const double dp = coeffs.kappa[a] * d.p;
    f.lo[a] = {avg.rho - dr, avg.v - dv, avg.p - dp};
    f.hi[a] = {avg.rho + dr, avg.v + dv, avg.p + dp};
  }
  return f;
}

//----------------------------------------------------------------------------------------

EulerState euler_flux(const EulerState& q, int axis, const GasModel& gas) {
  return euler_flux(q, cons_to_prim(q, gas), axis);
}

EulerState euler_flux(const EulerState& q, const PrimitiveState& w, int axis) {
  EulerState f;
  f.rho = q.m[axis];
  f.m = q.m[axis] * w.v;
  f.m[axis] += w.p;
  f.E = (q.E + w.p) * w.v[axis];
  return f;
}

EulerState lax_friedrichs_flux(const EulerState& q_minus, const EulerState& q_plus, int axis,
                               double alpha, const GasModel& gas) {
  if (!is_admissible(q_minus) || !is_admissible(q_plus))
    throw NonPhysicalState("flux evaluated on inadmissible face state " +
                           describe(is_admissible(q_minus) ? q_plus : q_minus));
  return lax_friedrichs_flux(q_minus, cons_to_prim(q_minus, gas), q_plus, cons_to_prim(q_plus, gas),
                             axis, alpha);
}

EulerState lax_friedrichs_flux(const EulerState& q_minus, const PrimitiveState& w_minus,
                               const EulerState& q_plus, const PrimitiveState& w_plus, int axis,
                               double alpha) {
  if (!is_admissible(w_minus) || !is_admissible(w_plus))
    throw NonPhysicalState("flux evaluated on inadmissible face state " +
                           describe(is_admissible(w_minus) ? q_plus : q_minus));
  EulerState f = euler_flux(q_minus, w_minus, axis) + euler_flux(q_plus, w_plus, axis);
  f -= alpha * (q_plus - q_minus);
  return 0.5 * f;
}

EulerState lax_friedrichs_flux(const EulerState& q_minus, const EulerState& q_plus, int axis,
                               const WaveSpeeds& speeds, const GasModel& gas) {
  return lax_friedrichs_flux(q_minus, q_plus, axis, speeds.alpha[axis], gas);
}

//----------------------------------------------------------------------------------------

FieldGrid euler_forward_step(const FieldGrid& field, double dt, const BoundarySpec& spec,
                             const FvOptions& opts, const GasModel& gas) {
  const GridGeometry& g = field.geometry();
  const int dim = g.dim;
  FieldGrid out = field;
  apply_boundaries(out, spec);

  const Field<PrimitiveState> w = primitives(out, gas);
  const WaveSpeeds speeds = compute_wave_speeds(w, gas);
  const double rate = speeds.rate(g);
  if (dt * rate > (1.0 + 1e-12) / opts.q) {
    std::ostringstream os;
    os << "forward Euler stage violates the PP CFL bound: dt=" << dt
       << ", admissible dt=" << 1.0 / (opts.q * rate);
    throw StepRejected(os.str(), 1.0 / (opts.q * rate));
  }
  const std::array<double, 3> weights = speeds.weights(g);

  Field<FaceCons> faces(g);
  out.for_extended(1, [&](int, int, int, std::size_t idx) {
    FaceCons& fc = faces[idx];
    const EulerState avg = out[idx].euler();
    SlopePair s;
    if (opts.reconstruction == Reconstruction::VanAlbada) s = van_albada_slopes_at(w, idx);
    const LimiterCoefficients coeffs = pp_limit(w[idx], s, weights, dim, opts.q, gas,
                                                opts.limiter_eps);
    const FaceStates fs = limited_interface_states(w[idx], s, coeffs, dim);
    for (int a = 0; a < dim; ++a) {
      if (zero_delta(s.axis[a])) {
        fc.lo[a] = {avg, w[idx]};
        fc.hi[a] = {avg, w[idx]};
      } else {
        fc.lo[a] = {prim_to_cons(fs.lo[a], gas), fs.lo[a]};
        fc.hi[a] = {prim_to_cons(fs.hi[a], gas), fs.hi[a]};
      }
    }
  });

  // flux[a][idx] is the flux through the upper face of cell idx along axis a
  std::array<Field<EulerState>, 3> flux;
  for (int a = 0; a < dim; ++a) {
    flux[a] = Field<EulerState>(g);
    const std::ptrdiff_t s = out.stride(a);
    std::array<int, 3> lo{0, 0, 0};
    lo[a] = -1;
    for (int k = lo[2]; k < g.n[2]; ++k)
      for (int j = lo[1]; j < g.n[1]; ++j)
        for (int i = lo[0]; i < g.n[0]; ++i) {
          const std::size_t idx = out.index(i, j, k);
          const FaceValue& m = faces[idx].hi[a];
          const FaceValue& p = faces[idx + s].lo[a];
          flux[a][idx] = lax_friedrichs_flux(m.q, m.w, p.q, p.w, a, speeds.alpha[a]);
        }
  }

  std::array<double, 3> lambda{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) lambda[a] = dt / g.d(a);
  out.for_interior([&](int i, int j, int k, std::size_t idx) {
    EulerState q = out[idx].euler();
    for (int a = 0; a < dim; ++a) q -= lambda[a] * (flux[a][idx] - flux[a][idx - out.stride(a)]);
    if (!is_admissible(q))
      throw InvariantViolation("forward Euler produced inadmissible average at " +
                               cell_label(i, j, k) + ": " + describe(q));
    out[idx].set_euler(q);
  });
  return out;
}

FieldGrid euler_ssprk2_step(const FieldGrid& field, double dt, const BoundarySpec& spec,
                            const FvOptions& opts, const GasModel& gas) {
  const FieldGrid q1 = euler_forward_step(field, dt, spec, opts, gas);
  FieldGrid q2 = euler_forward_step(q1, dt, spec, opts, gas);
  field.for_interior([&](int i, int j, int k, std::size_t idx) {
    const EulerState q = 0.5 * field[idx].euler() + 0.5 * q2[idx].euler();
    if (!is_admissible(q))
      throw InvariantViolation("SSP-RK2 combination inadmissible at " + cell_label(i, j, k));
    q2[idx].set_euler(q);
    q2[idx].B = field[idx].B;
  });
  return q2;
}

Field<LimiterCoefficients> limiter_coefficients(const FieldGrid& field, const BoundarySpec& spec,
                                                const FvOptions& opts, const GasModel& gas) {
  FieldGrid work = field;
  apply_boundaries(work, spec);
  const Field<PrimitiveState> w = primitives(work, gas);
  const std::array<double, 3> weights = compute_wave_speeds(w, gas).weights(work.geometry());
  Field<LimiterCoefficients> c(work.geometry());
  work.for_interior([&](int, int, int, std::size_t idx) {
    c[idx] = pp_limit(w[idx], van_albada_slopes_at(w, idx), weights, work.dim(), opts.q, gas,
                      opts.limiter_eps);
  });
  return c;
}

}  // namespace ppct
