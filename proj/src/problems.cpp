#include "ppct/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppct/ct_fd.hpp"
#include "ppct/euler_fv.hpp"

namespace ppct {

namespace {

constexpr double kPi = std::numbers::pi;

using PointState = std::function<CellState(const Vec3&)>;

FieldGrid sample(const GridGeometry& g, const PointState& f) {
  FieldGrid field(g);
  field.for_interior([&](int i, int j, int k, std::size_t idx) { field[idx] = f(g.center(i, j, k)); });
  return field;
}

// Central-difference curl of a vector potential sampled at cell centers, so that the
// discrete divergence of the result vanishes identically. Periodic axes sample the
// potential at wrapped positions.
Field<Vec3> curl_of_potential(const GridGeometry& g, const std::function<Vec3(const Vec3&)>& A,
                              const BoundarySpec& spec) {
  Field<Vec3> a(g);
  a.for_extended(1, [&](int i, int j, int k, std::size_t idx) {
    std::array<int, 3> c{i, j, k};
    for (int ax = 0; ax < g.dim; ++ax)
      if (spec.periodic(ax)) c[ax] = ((c[ax] % g.n[ax]) + g.n[ax]) % g.n[ax];
    a[idx] = A(g.center(c[0], c[1], c[2]));
  });
  return discrete_curl(a);
}

double wrap(double x, double lo, double len) { return x - len * std::floor((x - lo) / len); }

// Vortex profile amplitude e^{(1 - r^2)/2}
double vortex_bump(double x, double y) { return std::exp(0.5 * (1.0 - (x * x + y * y))); }

}  // namespace

GridGeometry ProblemSpec::geometry(int nx, int ny, int nz) const {
  if (dim == 2) return GridGeometry::make_2d(nx, ny, lo[0], hi[0], lo[1], hi[1]);
  return GridGeometry::make_3d(nx, ny, nz, lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]);
}

GridGeometry ProblemSpec::geometry() const {
  return geometry(default_n[0], default_n[1], default_n[2]);
}

FieldGrid ProblemSpec::initial_field(const GridGeometry& g, const GasModel& g_gas) const {
  if (g.dim != dim) throw ConfigurationError("problem " + name + " is " + std::to_string(dim) + "D");
  FieldGrid f = initial(g, g_gas);
  f.for_interior([&](int i, int j, int k, std::size_t idx) {
    if (!is_admissible(f[idx].euler()))
      throw NonPhysicalState("initial state of " + name + " inadmissible at " + cell_label(i, j, k));
  });
  return f;
}

//----------------------------------------------------------------------------------------
// Vortex

CellState vortex_state(const Vec3& x, double t, double mu, const GasModel& gas) {
  const double x0 = wrap(x[0] - t, -10.0, 20.0);
  const double y0 = wrap(x[1] - t, -10.0, 20.0);
  const double e = vortex_bump(x0, y0);
  const double r2 = x0 * x0 + y0 * y0;
  const double dv = mu / (std::sqrt(2.0) * kPi) * e;
  const double db = mu / (2.0 * kPi) * e;
  const double dp = -mu * mu * (1.0 + r2) / (8.0 * kPi * kPi) * e * e;
  PrimitiveState w{1.0, {1.0 - dv * y0, 1.0 + dv * x0, 0.0}, 1.0 + dp};
  return make_cell(w, {-db * y0, db * x0, 0.0}, gas);
}

double vortex_center_pressure(double mu) {
  return 1.0 - mu * mu / (8.0 * kPi * kPi) * std::exp(1.0);
}

ProblemSpec vortex(double mu, GasModel gas) {
  ProblemSpec p;
  p.name = "vortex";
  p.lo = {-10.0, -10.0, 0.0};
  p.hi = {10.0, 10.0, 1.0};
  p.default_n = {64, 64, 1};
  p.boundary = BoundarySpec::all(Periodic{});
  p.gas = gas;
  p.t_end = 0.05;
  const BoundarySpec spec = p.boundary;
  p.initial = [mu, spec](const GridGeometry& g, const GasModel& gas) {
    FieldGrid f = sample(g, [&](const Vec3& x) { return vortex_state(x, 0.0, mu, gas); });
    // A_z with (dB1, dB2) = (dA/dy, -dA/dx)
    const Field<Vec3> b = curl_of_potential(
        g, [mu](const Vec3& x) { return Vec3{0.0, 0.0, mu / (2.0 * kPi) * vortex_bump(x[0], x[1])}; },
        spec);
    f.for_interior([&](int, int, int, std::size_t idx) { f[idx].B = b[idx]; });
    return f;
  };
  p.exact = [mu](const Vec3& x, double t, const GasModel& gas) { return vortex_state(x, t, mu, gas); };
  return p;
}

VortexErrors exact_vortex_error(const FieldGrid& field, double t, double mu) {
  const GridGeometry& g = field.geometry();
  const GasModel gas;  // only B and v are compared
  VortexErrors e;
  field.for_interior([&](int i, int j, int k, std::size_t idx) {
    const CellState ex = vortex_state(g.center(i, j, k), t, mu, gas);
    const CellState& s = field[idx];
    const double db = std::hypot(s.B[0] - ex.B[0], s.B[1] - ex.B[1]);
    const double dv = std::hypot(s.m[0] / s.rho - ex.m[0] / ex.rho, s.m[1] / s.rho - ex.m[1] / ex.rho);
    e.B.l1 += db;
    e.B.l2 += db * db;
    e.B.linf = std::max(e.B.linf, db);
    e.v.l1 += dv;
    e.v.l2 += dv * dv;
    e.v.linf = std::max(e.v.linf, dv);
  });
  const double n = static_cast<double>(g.interior_count());
  for (NormTriple* t3 : {&e.B, &e.v}) {
    t3->l1 /= n;
    t3->l2 = std::sqrt(t3->l2 / n);
  }
  return e;
}

//----------------------------------------------------------------------------------------

ProblemSpec orszag_tang(GasModel gas) {
  ProblemSpec p;
  p.name = "orszag-tang";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {2.0 * kPi, 2.0 * kPi, 1.0};
  p.default_n = {64, 64, 1};
  p.boundary = BoundarySpec::all(Periodic{});
  p.gas = gas;
  p.t_end = 2.0;
  p.initial = [](const GridGeometry& g, const GasModel& gas) {
    const double gm = gas.gamma();
    return sample(g, [&](const Vec3& x) {
      PrimitiveState w{gm * gm, {-std::sin(x[1]), std::sin(x[0]), 0.0}, gm};
      return make_cell(w, {-std::sin(x[1]), std::sin(2.0 * x[0]), 0.0}, gas);
    });
  };
  return p;
}

ProblemSpec rotor(GasModel gas) {
  ProblemSpec p;
  p.name = "rotor";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {1.0, 1.0, 1.0};
  p.default_n = {400, 400, 1};
  p.boundary = BoundarySpec::all(Outflow{});
  p.gas = gas;
  p.t_end = 0.295;
  p.initial = [](const GridGeometry& g, const GasModel& gas) {
    constexpr double r1 = 0.1, r2 = 0.115;
    const Vec3 B{2.5 / std::sqrt(4.0 * kPi), 0.0, 0.0};
    return sample(g, [&](const Vec3& x) {
      const double dx = x[0] - 0.5, dy = x[1] - 0.5;
      const double r = std::hypot(dx, dy);
      PrimitiveState w{1.0, {0.0, 0.0, 0.0}, 0.5};
      if (r <= r1) {
        w.rho = 10.0;
        w.v = {-dy / r1, dx / r1, 0.0};
      } else if (r <= r2) {
        const double phi = (r2 - r) / (r2 - r1);
        w.rho = 1.0 + 9.0 * phi;
        w.v = {-phi * dy / r, phi * dx / r, 0.0};
      }
      return make_cell(w, B, gas);
    });
  };
  return p;
}

ProblemSpec blast(GasModel gas) {
  ProblemSpec p;
  p.name = "blast";
  p.lo = {-0.5, -0.5, 0.0};
  p.hi = {0.5, 0.5, 1.0};
  p.default_n = {400, 400, 1};
  p.boundary = BoundarySpec::all(Outflow{});
  p.gas = gas;
  p.t_end = 0.01;
  p.initial = [](const GridGeometry& g, const GasModel& gas) {
    const Vec3 B{100.0 / std::sqrt(4.0 * kPi), 0.0, 0.0};
    return sample(g, [&](const Vec3& x) {
      const double pr = std::hypot(x[0], x[1]) <= 0.1 ? 1000.0 : 0.1;
      return make_cell({1.0, {0.0, 0.0, 0.0}, pr}, B, gas);
    });
  };
  return p;
}

ProblemSpec shock_cloud(GasModel gas) {
  ProblemSpec p;
  p.name = "shock-cloud";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {1.0, 1.0, 1.0};
  p.default_n = {400, 400, 1};
  p.gas = gas;
  p.t_end = 0.06;
  auto right = [](const GasModel& gas) {
    return make_cell({1.0, {-11.2536, 0.0, 0.0}, 1.0}, {0.0, 0.56418958, 0.56418958}, gas);
  };
  p.boundary = BoundarySpec::all(Outflow{});
  p.boundary.set(0, Side::Hi, Inflow{right(gas)});
  p.initial = [right](const GridGeometry& g, const GasModel& gas) {
    const CellState left =
        make_cell({3.86859, {0.0, 0.0, 0.0}, 167.345}, {0.0, 2.1826182, -2.1826182}, gas);
    const CellState rs = right(gas);
    return sample(g, [&](const Vec3& x) {
      if (x[0] < 0.6) return left;
      const double dx = x[0] - 0.8, dy = x[1] - 0.5;
      if (dx * dx + dy * dy < 0.15 * 0.15)
        return make_cell({10.0, {-11.2536, 0.0, 0.0}, 1.0}, rs.B, gas);
      return rs;
    });
  };
  return p;
}

ProblemSpec sedov_mhd(GasModel gas) {
  ProblemSpec p;
  p.name = "sedov";
  p.lo = {-1.0, -1.0, 0.0};
  p.hi = {1.0, 1.0, 1.0};
  p.default_n = {400, 400, 1};
  p.boundary = BoundarySpec::all(Outflow{});
  p.gas = gas;
  p.t_end = 0.4;
  p.initial = [](const GridGeometry& g, const GasModel&) {
    CellState s;
    s.rho = 1.0;
    s.B = {1.0, 1.0, 0.0};
    s.E = 2.5e-5;
    FieldGrid f(g, s);
    // cell whose closed lower-left corner region contains the origin
    std::array<int, 2> c{};
    for (int a = 0; a < 2; ++a)
      c[a] = std::clamp(static_cast<int>(std::floor((0.0 - g.origin[a]) / g.d(a))), 0, g.n[a] - 1);
    f(c[0], c[1]).E = 0.244816 / (g.dx() * g.dy());
    return f;
  };
  return p;
}

ProblemSpec jet(double mach, double b0, GasModel gas) {
  ProblemSpec p;
  p.name = "jet";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {0.5, 1.5, 1.0};
  p.default_n = {500, 1500, 1};
  p.gas = gas;
  if (mach == 800.0) p.t_end = 0.002;
  else if (mach == 2000.0) p.t_end = 0.00075;
  else if (mach == 10000.0) p.t_end = 0.00015;
  else p.t_end = 1.6 / mach;
  auto inlet = [mach, b0](const GasModel& gas) {
    return make_cell({gas.gamma(), {0.0, mach, 0.0}, 1.0}, {0.0, b0, 0.0}, gas);
  };
  p.boundary = BoundarySpec::all(Outflow{});
  p.boundary.set(0, Side::Lo, Reflecting{});
  p.boundary.set(1, Side::Lo,
                 MaskedInflow{[](const Vec3& x) { return std::abs(x[0]) < 0.05; }, inlet(gas),
                              Outflow{}});
  p.initial = [b0](const GridGeometry& g, const GasModel& gas) {
    const CellState amb = make_cell({0.1 * gas.gamma(), {0.0, 0.0, 0.0}, 1.0}, {0.0, b0, 0.0}, gas);
    return FieldGrid(g, amb);
  };
  return p;
}

ProblemSpec perturbed_3d(GasModel gas) {
  ProblemSpec p;
  p.name = "perturbed-3d";
  p.dim = 3;
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {1.0, 1.0, 1.0};
  p.default_n = {16, 16, 16};
  p.boundary = BoundarySpec::all(Periodic{});
  p.gas = gas;
  p.t_end = 0.1;
  const BoundarySpec spec = p.boundary;
  p.initial = [spec](const GridGeometry& g, const GasModel& gas) {
    constexpr double k = 2.0 * kPi;
    const Field<Vec3> db = curl_of_potential(
        g,
        [](const Vec3& x) {
          constexpr double a = 0.2 / (2.0 * kPi);
          return Vec3{a * std::sin(k * x[2]), a * std::sin(k * x[0]), a * std::sin(k * x[1])};
        },
        spec);
    FieldGrid f = sample(g, [&](const Vec3& x) {
      PrimitiveState w{1.0 + 0.2 * std::sin(k * (x[0] + x[1] + x[2])),
                       {0.3 * std::sin(k * x[1]), 0.3 * std::sin(k * x[2]), 0.3 * std::sin(k * x[0])},
                       1.0 + 0.1 * std::cos(k * (x[0] - x[1]))};
      return make_cell(w, {0.5, 0.3, 0.2}, gas);
    });
    f.for_interior([&](int, int, int, std::size_t idx) { f[idx].B += db[idx]; });
    return f;
  };
  return p;
}

//----------------------------------------------------------------------------------------

std::vector<std::string> problem_names() {
  return {"vortex", "orszag-tang", "rotor", "blast", "shock-cloud", "sedov", "jet", "perturbed-3d"};
}

ProblemSpec make_problem(const std::string& name, const ProblemParams& params) {
  auto gas = [&](double fallback) { return GasModel(params.gamma > 0.0 ? params.gamma : fallback); };
  if (name == "vortex") return vortex(params.mu, gas(5.0 / 3.0));
  if (name == "orszag-tang") return orszag_tang(gas(5.0 / 3.0));
  if (name == "rotor") return rotor(gas(5.0 / 3.0));
  if (name == "blast") return blast(gas(1.4));
  if (name == "shock-cloud") return shock_cloud(gas(5.0 / 3.0));
  if (name == "sedov") return sedov_mhd(gas(1.4));
  if (name == "jet") return jet(params.mach, params.b0, gas(1.4));
  if (name == "perturbed-3d") return perturbed_3d(gas(5.0 / 3.0));
  throw ConfigurationError("unknown problem '" + name + "'");
}

}  // namespace ppct
