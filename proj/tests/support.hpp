#pragma once
// Shared helpers for the test binaries.

#include <algorithm>
#include <cmath>
#include <random>

#include "ppct/cli.hpp"
#include "ppct/ct_fd.hpp"
#include "ppct/diagnostics.hpp"
#include "ppct/euler_fv.hpp"
#include "ppct/problems.hpp"
#include "ppct/splitting.hpp"

namespace ppct::test {

inline GridGeometry unit_2d(int nx, int ny) { return GridGeometry::make_2d(nx, ny, 0.0, 1.0, 0.0, 1.0); }
inline GridGeometry unit_3d(int n) { return GridGeometry::make_3d(n, n, n, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0); }

inline BoundarySpec periodic() { return BoundarySpec::all(Periodic{}); }

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline EulerState random_euler(std::mt19937_64& rng, const GasModel& gas) {
  return prim_to_cons(random_primitive(rng), gas);
}

// Largest |a - b| over the interior cells of two fields, componentwise.
inline double max_cell_diff(const FieldGrid& a, const FieldGrid& b) {
  double d = 0.0;
  a.for_interior([&](int, int, int, std::size_t idx) {
    const CellState &x = a[idx], &y = b[idx];
    d = std::max({d, std::abs(x.rho - y.rho), std::abs(x.E - y.E)});
    for (int c = 0; c < 3; ++c) d = std::max({d, std::abs(x.m[c] - y.m[c]), std::abs(x.B[c] - y.B[c])});
  });
  return d;
}

}  // namespace ppct::test
