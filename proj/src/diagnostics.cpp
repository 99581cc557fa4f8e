#include "ppct/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "ppct/ct_fd.hpp"

namespace ppct {

Totals totals(const FieldGrid& field) {
  Totals t;
  field.for_interior([&](int, int, int, std::size_t idx) {
    const CellState& s = field[idx];
    const double mag = 0.5 * norm2(s.B);
    t.mass += s.rho;
    t.momentum += s.m;
    t.total_energy += s.E + mag;
    t.magnetic_energy += mag;
  });
  return t;
}

PositivityReport positivity_report(const FieldGrid& field, const GasModel& gas) {
  PositivityReport r;
  r.min_rho = std::numeric_limits<double>::infinity();
  r.min_p = std::numeric_limits<double>::infinity();
  field.for_interior([&](int i, int j, int k, std::size_t idx) {
    const CellState& s = field[idx];
    if (s.rho < r.min_rho) {
      r.min_rho = s.rho;
      r.argmin_rho = {i, j, k};
    }
    const double p = (gas.gamma() - 1.0) * (s.E - 0.5 * norm2(s.m) / s.rho);
    if (p < r.min_p || std::isnan(p)) {
      r.min_p = p;
      r.argmin_p = {i, j, k};
    }
  });
  return r;
}

DivergenceReport divergence_report(const FieldGrid& field) {
  const Field<double> div = discrete_divergence(field);
  DivergenceReport r;
  double sq = 0.0;
  field.for_interior([&](int, int, int, std::size_t idx) {
    r.max_abs = std::fmax(r.max_abs, std::abs(div[idx]));
    sq += div[idx] * div[idx];
  });
  r.l2 = std::sqrt(sq / static_cast<double>(field.geometry().interior_count()));
  return r;
}

DivergenceReport divergence_report(const FieldGrid& field, const BoundarySpec& spec) {
  FieldGrid work = field;
  apply_boundaries(work, spec);
  return divergence_report(work);
}

double max_abs_B(const FieldGrid& field) {
  double m = 0.0;
  field.for_interior([&](int, int, int, std::size_t idx) { m = std::fmax(m, norm_inf(field[idx].B)); });
  return m;
}

double scaled_divergence(const FieldGrid& field, const BoundarySpec& spec) {
  const double b = max_abs_B(field);
  if (b == 0.0) return 0.0;
  return divergence_report(field, spec).max_abs * field.geometry().min_spacing() / b;
}

std::vector<double> convergence_order(const std::vector<double>& errors) {
  std::vector<double> orders;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    orders.push_back(std::log2(errors[k] / errors[k + 1]));
  return orders;
}

}  // namespace ppct
