#pragma once
//========================================================================================
// Conservation, positivity, divergence and convergence-order measurements.
//========================================================================================

#include <array>
#include <vector>

#include "ppct/core.hpp"
#include "ppct/grid.hpp"

namespace ppct {

struct Totals {
  double mass = 0.0;
  Vec3 momentum;
  double total_energy = 0.0;  // sum of E + |B|^2/2
  double magnetic_energy = 0.0;
};

struct PositivityReport {
  double min_rho = 0.0;
  double min_p = 0.0;
  std::array<int, 3> argmin_rho{0, 0, 0};
  std::array<int, 3> argmin_p{0, 0, 0};
};

struct DivergenceReport {
  double max_abs = 0.0;
  double l2 = 0.0;  // root mean square over interior cells
};

Totals totals(const FieldGrid& field);
PositivityReport positivity_report(const FieldGrid& field, const GasModel& gas);

// Ghosts of `field` must be filled.
DivergenceReport divergence_report(const FieldGrid& field);
DivergenceReport divergence_report(const FieldGrid& field, const BoundarySpec& spec);

double max_abs_B(const FieldGrid& field);
// max|div B| * min spacing / max|B|, zero when B vanishes.
double scaled_divergence(const FieldGrid& field, const BoundarySpec& spec);

std::vector<double> convergence_order(const std::vector<double>& errors);

}  // namespace ppct
