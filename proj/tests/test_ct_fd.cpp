#include "doctest.h"
#include "support.hpp"

using namespace ppct;

namespace {

Field<Vec3> sampled(const GridGeometry& g, const std::function<Vec3(const Vec3&)>& f) {
  Field<Vec3> out(g);
  out.for_extended(g.ghost, [&](int i, int j, int k, std::size_t idx) { out[idx] = f(g.center(i, j, k)); });
  return out;
}

double kinetic_magnetic(const FieldGrid& f) {
  double e = 0.0;
  f.for_interior([&](int, int, int, std::size_t idx) {
    const CellState& s = f[idx];
    e += 0.5 * norm2(s.m) / s.rho + 0.5 * norm2(s.B);
  });
  return e;
}

double max_div(FieldGrid f, const BoundarySpec& spec) {
  apply_boundaries(f, spec);
  return divergence_report(f).max_abs;
}

FieldGrid smooth(const GridGeometry& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_smooth_field(g, rng, GasModel());
}

}  // namespace

TEST_SUITE("ct_fd") {

TEST_CASE("electric field") {
  CHECK(electric_field({1, 2, 3}, {2, 4, 6}) == Vec3{});
  CHECK(electric_field({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n = 0; n < 100; ++n) {
    const Vec3 b{u(rng), u(rng), u(rng)}, v{u(rng), u(rng), u(rng)};
    CHECK(electric_field(b, v) == -electric_field(v, b));
  }
}

TEST_CASE("discrete curl") {
  const GridGeometry g = GridGeometry::make_2d(5, 4, 0.0, 1.0, 0.0, 2.0);
  Field<Vec3> c = discrete_curl(sampled(g, [](const Vec3&) { return Vec3{1, 2, 3}; }));
  c.for_interior([&](int, int, int, std::size_t idx) { CHECK(c[idx] == Vec3{}); });

  c = discrete_curl(sampled(g, [](const Vec3& x) { return Vec3{0, x[0], 0}; }));
  c.for_interior([&](int, int, int, std::size_t idx) {
    CHECK(c[idx][2] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c[idx][0] == 0.0);
  });

  // gradient of phi = x^2 + 3xy - y^2 + 2yz + z^2 in 3D
  const GridGeometry g3 = GridGeometry::make_3d(4, 3, 5, 0.0, 1.0, -1.0, 1.0, 0.0, 2.0);
  c = discrete_curl(sampled(g3, [](const Vec3& x) {
    return Vec3{2 * x[0] + 3 * x[1], 3 * x[0] - 2 * x[1] + 2 * x[2], 2 * x[1] + 2 * x[2]};
  }));
  c.for_interior([&](int, int, int, std::size_t idx) { CHECK(norm_inf(c[idx]) <= 1e-13); });
}

TEST_CASE("discrete curl in 2D drops z derivatives") {
  const GridGeometry g = test::unit_2d(4, 4);
  Field<Vec3> c = discrete_curl(sampled(g, [](const Vec3& x) { return Vec3{x[1], 0, x[0] + 2 * x[1]}; }));
  c.for_interior([&](int, int, int, std::size_t idx) {
    CHECK(c[idx][0] == doctest::Approx(2.0));
    CHECK(c[idx][1] == doctest::Approx(-1.0));
    CHECK(c[idx][2] == doctest::Approx(-1.0));
  });
}

TEST_CASE("discrete divergence") {
  const GridGeometry g = GridGeometry::make_2d(6, 3, -1.0, 1.0, 0.0, 1.0);
  Field<double> d = discrete_divergence(sampled(g, [](const Vec3&) { return Vec3{4, 5, 6}; }));
  d.for_interior([&](int, int, int, std::size_t idx) { CHECK(d[idx] == 0.0); });

  d = discrete_divergence(sampled(g, [](const Vec3& x) { return Vec3{x[0], 0, 0}; }));
  d.for_interior([&](int, int, int, std::size_t idx) { CHECK(d[idx] == doctest::Approx(1.0).epsilon(1e-13)); });

  d = discrete_divergence(sampled(g, [](const Vec3& x) { return Vec3{-x[1], x[0], 0}; }));
  d.for_interior([&](int, int, int, std::size_t idx) { CHECK(d[idx] == 0.0); });
}

TEST_CASE("ct_rhs vanishes for static uniform field") {
  const GridGeometry g = test::unit_2d(4, 4);
  Field<MagKin> st(g, MagKin{{1, 2, 3}, {0, 0, 0}});
  const Field<MagKin> psi = ct_rhs(st, Field<double>(g, 1.0));
  psi.for_interior([&](int, int, int, std::size_t idx) {
    CHECK(psi[idx].B == Vec3{});
    CHECK(psi[idx].v == Vec3{});
  });
  Field<double> rho(g, 1.0);
  rho(1, 2) = 0.0;
  CHECK_THROWS_AS(ct_rhs(st, rho), NonPhysicalState);
}

TEST_CASE("ct_solve leaves a static uniform field unchanged in one iteration") {
  const GasModel gas;
  FieldGrid f(test::unit_2d(4, 4));
  for (CellState& c : f.raw()) c = make_cell({1.0, {}, 1.0}, {0.3, -0.2, 0.5}, gas);
  const CtResult r = ct_solve(f, 0.1, test::periodic());
  CHECK(r.report.iterations == 1);
  CHECK(r.report.converged);
  CHECK(test::max_cell_diff(r.field, f) == 0.0);
}

TEST_CASE("update_energy") {
  const GasModel gas(1.4);
  FieldGrid before(test::unit_2d(2, 2));
  for (CellState& c : before.raw()) c = CellState{2.0, {2, 0, 0}, {}, 3.0};
  FieldGrid after = before;
  after.for_interior([&](int, int, int, std::size_t idx) { after[idx].m = {}; });
  FieldGrid out = update_energy(before, after);
  out.for_interior([&](int, int, int, std::size_t idx) { CHECK(out[idx].E == 2.0); });

  out = update_energy(before, before);
  out.for_interior([&](int, int, int, std::size_t idx) { CHECK(out[idx].E == 3.0); });

  after(1, 1).rho = 2.5;
  CHECK_THROWS_AS(update_energy(before, after), InvariantViolation);
}

TEST_CASE("update_energy keeps internal energy on random fields") {
  const GasModel gas;
  std::mt19937_64 rng(2);
  const FieldGrid a = random_field(test::unit_2d(8, 8), rng, gas);
  FieldGrid b = random_field(test::unit_2d(8, 8), rng, gas);
  b.for_interior([&](int, int, int, std::size_t idx) {
    b[idx].m = (a[idx].rho / b[idx].rho) * b[idx].m;
    b[idx].rho = a[idx].rho;
  });
  const FieldGrid out = update_energy(a, b);
  a.for_interior([&](int, int, int, std::size_t idx) {
    CHECK(test::rel_diff(internal_energy(out[idx].euler()), internal_energy(a[idx].euler())) <= 1e-13);
  });
}

TEST_CASE("contraction bound") {
  const GasModel gas;
  FieldGrid f(GridGeometry::make_2d(3, 3, 0.0, 3.0, 0.0, 3.0));
  for (CellState& c : f.raw()) c = make_cell({1.0, {}, 1.0}, {}, gas);
  CHECK(contraction_bound(f, 1.0) == 0.0);
  for (CellState& c : f.raw()) c = make_cell({1.0, {1, 0, 0}, 1.0}, {1, 0, 0}, gas);
  CHECK(contraction_bound(f, 1.0) == 2.0);
  CHECK(contraction_bound(f, 0.5) == 1.0);
}

TEST_CASE("ct_solve preserves the discrete divergence") {
  for (const GridGeometry& g : {test::unit_2d(16, 16), test::unit_3d(6)}) {
    FieldGrid f = smooth(g, 7);
    const double d0 = max_div(f, test::periodic());
    const RunConfig cfg = RunConfig::with_q(3.0);
    for (int step = 0; step < 5; ++step) {
      const double dt = select_dt(f, cfg, test::periodic());
      f = ct_solve(f, dt, test::periodic(), cfg.ct()).field;
    }
    apply_boundaries(f, test::periodic());
    const double scale = max_abs_B(f) / g.min_spacing();
    CHECK(max_div(f, test::periodic()) <= d0 + 1e-11 * scale);
  }
}

TEST_CASE("ct_solve energy identity and frozen density") {
  for (const GridGeometry& g : {test::unit_2d(8, 8), test::unit_3d(4)}) {
    const FieldGrid f = smooth(g, 8);
    const RunConfig cfg = RunConfig::with_q(3.0);
    const double dt = select_dt(f, cfg, test::periodic());
    const CtResult r = ct_solve(f, dt, test::periodic(), cfg.ct());
    const double cells = static_cast<double>(g.interior_count());
    CHECK(std::abs(kinetic_magnetic(r.field) - kinetic_magnetic(f)) <= 100.0 * cells * cfg.eps_tol);
    f.for_interior([&](int, int, int, std::size_t idx) {
      CHECK(r.field[idx].rho == f[idx].rho);
      CHECK(test::rel_diff(internal_energy(r.field[idx].euler()), internal_energy(f[idx].euler())) <= 1e-13);
    });
  }
}

TEST_CASE("ct_solve converged state satisfies the midpoint equations") {
  const GridGeometry g = test::unit_2d(8, 8);
  const FieldGrid f = smooth(g, 9);
  const RunConfig cfg = RunConfig::with_q(3.0);
  const double dt = select_dt(f, cfg, test::periodic());
  const CtResult r = ct_solve(f, dt, test::periodic(), cfg.ct());

  Field<MagKin> mid(g);
  Field<double> rho(g, 1.0);
  f.for_interior([&](int, int, int, std::size_t idx) {
    const CellState &a = f[idx], &b = r.field[idx];
    mid[idx].B = 0.5 * (a.B + b.B);
    mid[idx].v = 0.5 * ((1.0 / a.rho) * a.m + (1.0 / b.rho) * b.m);
    rho[idx] = a.rho;
  });
  apply_boundaries(mid, test::periodic());
  const Field<MagKin> psi = ct_rhs(mid, rho);
  double res = 0.0;
  f.for_interior([&](int, int, int, std::size_t idx) {
    const CellState &a = f[idx], &b = r.field[idx];
    res = std::max(res, norm_inf(b.B - (a.B - dt * psi[idx].B)));
    res = std::max(res, norm_inf((1.0 / b.rho) * b.m - ((1.0 / a.rho) * a.m - dt * psi[idx].v)));
  });
  CHECK(res <= 10.0 * cfg.eps_tol);
}

TEST_CASE("fixed-point error decreases geometrically") {
  const FieldGrid f = smooth(test::unit_2d(16, 16), 10);
  RunConfig cfg = RunConfig::with_q(3.0);
  cfg.eps_tol = 1e-13;
  const double dt = select_dt(f, cfg, test::periodic());
  const CtResult r = ct_solve(f, dt, test::periodic(), cfg.ct());
  const std::vector<double>& h = r.report.history;
  REQUIRE(h.size() >= 3);
  for (std::size_t k = 1; k + 1 < h.size(); ++k) CHECK(h[k + 1] < h[k]);
}

TEST_CASE("iteration count at the default tolerance") {
  // random smooth fields rescaled to the Orszag-Tang density and pressure levels
  const GasModel gas;
  const double g = gas.gamma();
  const RunConfig cfg = RunConfig::with_q(3.0);
  for (std::uint64_t seed = 12; seed < 32; ++seed) {
    FieldGrid f = smooth(test::unit_2d(16, 16), seed);
    f.for_interior([&](int, int, int, std::size_t idx) {
      PrimitiveState w = cell_primitive(f[idx], gas);
      w.rho *= g * g;
      w.p *= g;
      f[idx] = make_cell(w, f[idx].B, gas);
    });
    const CtResult r = ct_solve(f, select_dt(f, cfg, test::periodic()), test::periodic(), cfg.ct());
    CHECK(r.report.converged);
    CHECK(r.report.iterations <= 20);
  }
}

TEST_CASE("ct_solve reports non-convergence") {
  const FieldGrid f = smooth(test::unit_2d(8, 8), 11);
  const double dt = select_dt(f, RunConfig::with_q(3.0), test::periodic());
  try {
    ct_solve(f, dt, test::periodic(), CtOptions{1e-30, 3});
    FAIL("expected ConvergenceFailure");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.report().iterations == 3);
    CHECK(e.report().history.size() == 3);
    CHECK_FALSE(e.report().converged);
  }
}

}
