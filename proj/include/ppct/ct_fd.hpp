#pragma once
//========================================================================================
// Implicit finite-difference constrained transport for the magnetic/kinematic part
// (rho and internal energy frozen). Cell-centred, midpoint in time, solved by a
// Jacobi fixed-point iteration.
//========================================================================================

#include <vector>

#include "ppct/core.hpp"
#include "ppct/grid.hpp"

namespace ppct {

struct MagneticKinematicState {
  Vec3 B;
  Vec3 v;
};
using MagKin = MagneticKinematicState;

inline void reflect_normal(MagKin& s, int axis) {
  s.B[axis] = -s.B[axis];
  s.v[axis] = -s.v[axis];
}
inline void assign_fixed(MagKin& dst, const CellState& src) {
  dst.B = src.B;
  dst.v = (1.0 / src.rho) * src.m;
}
inline void reflect_normal(Vec3& b, int axis) { b[axis] = -b[axis]; }
inline void assign_fixed(Vec3& dst, const CellState& src) { dst = src.B; }

struct IterationReport {
  int iterations = 0;
  double final_error = 0.0;
  bool converged = false;
  std::vector<double> history;  // E_0, E_1, ...
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, IterationReport report)
      : Error(what), report_(std::move(report)) {}
  const IterationReport& report() const { return report_; }

 private:
  IterationReport report_;
};

struct CtOptions {
  double tol = 1e-10;
  int max_iter = 100;
};

struct CtResult {
  FieldGrid field;
  IterationReport report;
};

Vec3 electric_field(const Vec3& B, const Vec3& v);

// Central-difference curl; the z derivatives are dropped in 2D.
template <class T, class Get>
Vec3 curl_at(const Field<T>& f, std::size_t idx, Get get) {
  const GridGeometry& g = f.geometry();
  Vec3 c;
  for (int a = 0; a < g.dim; ++a) {
    const Vec3& p = get(f[idx + f.stride(a)]);
    const Vec3& m = get(f[idx - f.stride(a)]);
    const double h2 = 2.0 * g.d(a);
    const int b = (a + 1) % 3;
    const int e = (a + 2) % 3;
    // (a, b, e) cyclic: d/da adds dF_b/da to curl_e and subtracts dF_e/da from curl_b
    c[e] += (p[b] - m[b]) / h2;
    c[b] -= (p[e] - m[e]) / h2;
  }
  return c;
}

template <class T, class Get>
double divergence_at(const Field<T>& f, std::size_t idx, Get get) {
  const GridGeometry& g = f.geometry();
  double d = 0.0;
  for (int a = 0; a < g.dim; ++a)
    d += (get(f[idx + f.stride(a)])[a] - get(f[idx - f.stride(a)])[a]) / (2.0 * g.d(a));
  return d;
}

// Interior values; ghosts of the input must be filled.
Field<Vec3> discrete_curl(const Field<Vec3>& field);
Field<double> discrete_divergence(const Field<Vec3>& field);
Field<double> discrete_divergence(const FieldGrid& field);

// Psi with R^{n+1} = R^n - dt Psi((R^n + R^{n+1})/2); interior values.
Field<MagKin> ct_rhs(const Field<MagKin>& state, const Field<double>& rho);

CtResult ct_solve(const FieldGrid& field, double dt, const BoundarySpec& spec,
                  const CtOptions& opts = {});

FieldGrid update_energy(const FieldGrid& before, const FieldGrid& after);

// Diagnostic contraction factor of the fixed-point map; ghosts must be filled.
double contraction_bound(const FieldGrid& field, double dt);

}  // namespace ppct
