#pragma once
//========================================================================================
// Initial conditions and boundary setups for the benchmark problems.
//========================================================================================

#include <functional>
#include <string>
#include <vector>

#include "ppct/core.hpp"
#include "ppct/grid.hpp"

namespace ppct {

struct ProblemSpec {
  std::string name;
  int dim = 2;
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  std::array<int, 3> default_n{64, 64, 1};
  BoundarySpec boundary;
  GasModel gas;
  double t_end = 0.0;
  // Interior cells only; ghosts are left to the boundary conditions.
  std::function<FieldGrid(const GridGeometry&, const GasModel&)> initial;
  // Optional exact solution (position, time).
  std::function<CellState(const Vec3&, double, const GasModel&)> exact;

  GridGeometry geometry(int nx, int ny, int nz = 1) const;
  GridGeometry geometry() const;
  // Builds the initial field and checks admissibility of every interior cell.
  FieldGrid initial_field(const GridGeometry& g, const GasModel& gas) const;
  FieldGrid initial_field(const GridGeometry& g) const { return initial_field(g, gas); }
};

constexpr double kExtremeVortexMu = 5.389489439;

ProblemSpec vortex(double mu, GasModel gas = GasModel(5.0 / 3.0));
ProblemSpec orszag_tang(GasModel gas = GasModel(5.0 / 3.0));
ProblemSpec rotor(GasModel gas = GasModel(5.0 / 3.0));
ProblemSpec blast(GasModel gas = GasModel(1.4));
ProblemSpec shock_cloud(GasModel gas = GasModel(5.0 / 3.0));
ProblemSpec sedov_mhd(GasModel gas = GasModel(1.4));
ProblemSpec jet(double mach, double b0, GasModel gas = GasModel(1.4));
// Smooth periodic 3D field: uniform background plus sinusoidal perturbations.
ProblemSpec perturbed_3d(GasModel gas = GasModel(5.0 / 3.0));

// Names accepted by make_problem.
std::vector<std::string> problem_names();
struct ProblemParams {
  double mu = 1.0;
  double b0 = 141.42135623730951;  // sqrt(20000)
  double mach = 800.0;
  double gamma = 0.0;  // 0 keeps the problem default
};
ProblemSpec make_problem(const std::string& name, const ProblemParams& params = {});

// Vortex perturbation state at a point, advected by (1, 1) over time t.
CellState vortex_state(const Vec3& x, double t, double mu, const GasModel& gas);
double vortex_center_pressure(double mu);

struct NormTriple {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};
struct VortexErrors {
  NormTriple B;
  NormTriple v;
};
VortexErrors exact_vortex_error(const FieldGrid& field, double t, double mu);

}  // namespace ppct
