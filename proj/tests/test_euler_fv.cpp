#include "doctest.h"
#include "support.hpp"

using namespace ppct;

namespace {

FieldGrid uniform_field(const GridGeometry& g, const PrimitiveState& w, const Vec3& B,
                        const GasModel& gas) {
  FieldGrid f(g);
  const CellState s = make_cell(w, B, gas);
  for (CellState& c : f.raw()) c = s;
  return f;
}

double sum_rho(const FieldGrid& f) { return totals(f).mass; }

double sum_E(const FieldGrid& f) {
  double e = 0.0;
  f.for_interior([&](int, int, int, std::size_t idx) { e += f[idx].E; });
  return e;
}

// Density bump advected at unit speed in x; returns the l1 error at t = 0.25.
double advection_error(int n) {
  const GasModel gas(1.4);
  const GridGeometry g = GridGeometry::make_2d(n, 1, 0.0, 1.0, 0.0, 1.0);
  const double pi = std::acos(-1.0);
  auto rho = [&](double x) { return 1.0 + 0.5 * std::sin(2.0 * pi * x); };
  FieldGrid f(g);
  f.for_interior([&](int i, int, int, std::size_t idx) {
    f[idx] = make_cell({rho(g.center(0, i)), {1, 0, 0}, 1.0}, {}, gas);
  });
  const BoundarySpec spec = test::periodic();
  const FvOptions opts{3.0};
  const double t_end = 0.25;
  apply_boundaries(f, spec);
  const double rate = compute_wave_speeds(f, gas).rate(g);
  const int steps = static_cast<int>(std::ceil(t_end * opts.q * rate / 0.9));
  const double dt = t_end / steps;
  for (int s = 0; s < steps; ++s) f = euler_ssprk2_step(f, dt, spec, opts, gas);
  double err = 0.0;
  f.for_interior([&](int i, int, int, std::size_t idx) {
    err += std::abs(f[idx].rho - rho(g.center(0, i) - t_end));
  });
  return err / n;
}

}  // namespace

TEST_SUITE("euler_fv") {

TEST_CASE("wave speeds") {
  const GasModel gas(1.4);
  FieldGrid f = uniform_field(test::unit_2d(4, 4), {1.0, {0, 0, 0}, 1.0}, {}, gas);
  WaveSpeeds s = compute_wave_speeds(f, gas);
  CHECK(s.alpha[0] == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(s.alpha[1] == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));

  f = uniform_field(test::unit_2d(4, 4), {1.0, {2, 0, 0}, 1.0}, {}, gas);
  s = compute_wave_speeds(f, gas);
  CHECK(s.alpha[0] == doctest::Approx(2.0 + std::sqrt(1.4)).epsilon(1e-15));
  CHECK(s.alpha[1] == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));

  FieldGrid one(test::unit_2d(1, 1));
  one(0, 0) = make_cell({2.0, {-1, 0.5, 0}, 3.0}, {}, gas);
  apply_boundaries(one, test::periodic());
  s = compute_wave_speeds(one, gas);
  const double c = sound_speed({2.0, {}, 3.0}, gas);
  CHECK(s.alpha[0] == 1.0 + c);
  CHECK(s.alpha[1] == 0.5 + c);

  f(1, 1).E = -1.0;
  CHECK_THROWS_AS(compute_wave_speeds(f, gas), NonPhysicalState);
}

TEST_CASE("convex weights follow alpha over spacing") {
  WaveSpeeds s;
  s.alpha = {1.0, 3.0, 0.0};
  const GridGeometry g = GridGeometry::make_2d(2, 4, 0, 1, 0, 2);
  CHECK(s.rate(g) == doctest::Approx(2.0 + 6.0));
  const auto w = s.weights(g);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.75));
}

TEST_CASE("van Albada slopes") {
  CHECK(van_albada(1.0, 1.0, 3.0) == 1.0);
  CHECK(van_albada(1.0, -1.0, 3.0) == 0.0);
  CHECK(van_albada(0.0, 0.0, 3.0) == 0.0);

  const GasModel gas(1.4);
  FieldGrid f(GridGeometry::make_2d(3, 1, 0.0, 3.0, 0.0, 1.0));
  for (int i = 0; i < 3; ++i) f(i, 0) = make_cell({1.0 + i, {}, 1.0}, {}, gas);
  apply_boundaries(f, BoundarySpec::all(Outflow{}));
  const Field<SlopePair> s = van_albada_slopes(f, gas);
  CHECK(s(1, 0).axis[0].rho == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s(1, 0).axis[0].p == 0.0);
  CHECK(s(1, 0).axis[1].rho == 0.0);

  for (int i = 0; i < 3; ++i) f(i, 0) = make_cell({i == 1 ? 2.0 : 1.0, {}, 1.0}, {}, gas);
  apply_boundaries(f, BoundarySpec::all(Outflow{}));
  CHECK(van_albada_slopes(f, gas)(1, 0).axis[0].rho == 0.0);

  const FieldGrid u = uniform_field(test::unit_2d(4, 4), {1.0, {1, 2, 3}, 2.0}, {1, 1, 1}, gas);
  const Field<SlopePair> su = van_albada_slopes(u, gas);
  u.for_interior([&](int, int, int, std::size_t idx) {
    for (int a = 0; a < 2; ++a) {
      CHECK(su[idx].axis[a].rho == 0.0);
      CHECK(su[idx].axis[a].p == 0.0);
      CHECK(su[idx].axis[a].v == Vec3{});
    }
  });
}

TEST_CASE("pp limiter coefficients") {
  const GasModel gas(1.4);
  const PrimitiveState avg{1.0, {0, 0, 0}, 1.0};
  const std::array<double, 3> weights{0.5, 0.5, 0.0};

  LimiterCoefficients c = pp_limit(avg, SlopePair{}, weights, 2, 3.0, gas);
  CHECK(c.inactive(2));

  SlopePair s;
  s.axis[0].rho = 2.0;
  c = pp_limit(avg, s, weights, 2, 3.0, gas);
  CHECK(c.alpha[0] == 1.0 / (2.0 * (1.0 + 1e-14)));
  CHECK(c.alpha[1] == 1.0);
  CHECK(c.kappa[0] == 1.0);
  CHECK(c.beta == 1.0);

  const FaceStates f = limited_interface_states(avg, s, c, 2);
  CHECK(f.hi[0].rho == doctest::Approx(2.0));
  CHECK(f.lo[0].rho > 0.0);
  CHECK(f.lo[0].rho < 1e-13);

  CHECK_THROWS_AS(pp_limit({1.0, {}, -1.0}, s, weights, 2, 3.0, gas), NonPhysicalState);
}

TEST_CASE("velocity limiter keeps the face pressure bound") {
  const GasModel gas(1.4);
  const PrimitiveState avg{1.0, {0, 0, 0}, 1e-3};
  SlopePair s;
  s.axis[0].v = {5.0, 0.0, 0.0};
  s.axis[1].v = {0.0, -3.0, 0.0};
  const std::array<double, 3> weights{0.4, 0.6, 0.0};
  const LimiterCoefficients c = pp_limit(avg, s, weights, 2, 3.0, gas);
  CHECK(c.beta < 1.0);
  CHECK(c.beta > 0.0);
  // implied by the beta bound when q = 3
  double kinetic = 0.0;
  for (int a = 0; a < 2; ++a) kinetic += weights[a] * avg.rho * norm2(c.beta * s.axis[a].v);
  CHECK(kinetic * (gas.gamma() - 1.0) <= avg.p * (1.0 + 1e-12));
}

TEST_CASE("limited interface states") {
  const PrimitiveState avg{1.0, {0.5, 0, 0}, 2.0};
  FaceStates f = limited_interface_states(avg, SlopePair{}, LimiterCoefficients{}, 2);
  for (int a = 0; a < 2; ++a) {
    CHECK(f.lo[a].rho == 1.0);
    CHECK(f.hi[a].p == 2.0);
    CHECK(f.hi[a].v == avg.v);
  }
  SlopePair s;
  s.axis[0].rho = 0.5;
  f = limited_interface_states(avg, s, LimiterCoefficients{}, 2);
  CHECK(f.hi[0].rho == 1.5);
  CHECK(f.lo[0].rho == 0.5);
  CHECK(f.hi[1].rho == 1.0);
}

TEST_CASE("Lax-Friedrichs flux examples") {
  const GasModel gas(1.4);
  const EulerState q = prim_to_cons({1.0, {0, 0, 0}, 1.0}, gas);
  const EulerState f = lax_friedrichs_flux(q, q, 0, 7.0, gas);
  CHECK(f.rho == 0.0);
  CHECK(f.m == Vec3{1.0, 0.0, 0.0});
  CHECK(f.E == 0.0);

  const EulerState qm = prim_to_cons({1.0, {0.3, -0.2, 0.1}, 2.0}, gas);
  CHECK(lax_friedrichs_flux(qm, qm, 1, 3.0, gas) == euler_flux(qm, 1, gas));

  const double delta = 0.25, alpha = 2.5;
  EulerState qp = qm;
  qp.rho += delta;
  const EulerState gm = euler_flux(qm, 0, gas), gp = euler_flux(qp, 0, gas);
  const EulerState expect = gm + 0.5 * (gp - gm) - 0.5 * alpha * EulerState{delta, {}, 0.0};
  const EulerState got = lax_friedrichs_flux(qm, qp, 0, alpha, gas);
  CHECK(got.rho == doctest::Approx(expect.rho).epsilon(1e-14));
  for (int c = 0; c < 3; ++c) CHECK(got.m[c] == doctest::Approx(expect.m[c]).epsilon(1e-14));
  CHECK(got.E == doctest::Approx(expect.E).epsilon(1e-14));

  CHECK_THROWS_AS(lax_friedrichs_flux(qm, EulerState{1.0, {2, 0, 0}, 1.0}, 0, alpha, gas),
                  NonPhysicalState);
}

TEST_CASE("uniform field is unchanged") {
  const GasModel gas(1.4);
  const FieldGrid f = uniform_field(test::unit_2d(6, 5), {1.3, {0.4, -0.7, 0.2}, 0.9}, {1, 2, 3}, gas);
  const double rate = compute_wave_speeds(f, gas).rate(f.geometry());
  const FieldGrid a = euler_forward_step(f, 1.0 / (3.0 * rate), test::periodic(), FvOptions{}, gas);
  const FieldGrid b = euler_ssprk2_step(f, 1.0 / (3.0 * rate), test::periodic(), FvOptions{}, gas);
  CHECK(test::max_cell_diff(a, f) <= 1e-15);
  CHECK(test::max_cell_diff(b, f) <= 1e-15);
}

TEST_CASE("forward step conserves mass and energy on periodic fields") {
  const GasModel gas;
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    FieldGrid f = random_field(test::unit_2d(8, 6), rng, gas);
    apply_boundaries(f, test::periodic());
    const double rate = compute_wave_speeds(f, gas).rate(f.geometry());
    const FieldGrid g = euler_forward_step(f, 1.0 / (3.0 * rate), test::periodic(), FvOptions{}, gas);
    CHECK(test::rel_diff(sum_rho(g), sum_rho(f)) <= 1e-13);
    CHECK(test::rel_diff(sum_E(g), sum_E(f)) <= 1e-13);
    g.for_interior([&](int, int, int, std::size_t idx) {
      CHECK(is_admissible(g[idx].euler()));
      CHECK(g[idx].B == f[idx].B);
    });
  }
}

TEST_CASE("CFL violation rejects the stage") {
  const GasModel gas(1.4);
  const FieldGrid f = uniform_field(test::unit_2d(4, 4), {1.0, {1, 0, 0}, 1.0}, {}, gas);
  const double rate = compute_wave_speeds(f, gas).rate(f.geometry());
  const double admissible = 1.0 / (3.0 * rate);
  try {
    euler_forward_step(f, 1.01 * admissible, test::periodic(), FvOptions{}, gas);
    FAIL("expected StepRejected");
  } catch (const StepRejected& e) {
    CHECK(e.admissible_dt() == doctest::Approx(admissible));
  }
  CHECK_NOTHROW(euler_forward_step(f, admissible, test::periodic(), FvOptions{}, gas));
}

TEST_CASE("MUSCL advection converges at second order") {
  const double e32 = advection_error(32), e64 = advection_error(64), e128 = advection_error(128);
  const std::vector<double> orders = convergence_order({e32, e64, e128});
  INFO("errors " << e32 << " " << e64 << " " << e128);
  CHECK(orders[0] >= 1.8);
  CHECK(orders[1] >= 1.8);
}

TEST_CASE("limiter is inactive on a smooth vortex") {
  const ProblemSpec p = vortex(1.0);
  FieldGrid f = p.initial_field(p.geometry(256, 256));
  const Field<LimiterCoefficients> c = limiter_coefficients(f, p.boundary, FvOptions{2.01}, p.gas);
  std::size_t inactive = 0;
  f.for_interior([&](int, int, int, std::size_t idx) { inactive += c[idx].inactive(2) ? 1 : 0; });
  const double frac = static_cast<double>(inactive) / f.geometry().interior_count();
  INFO("inactive fraction " << frac);
  CHECK(frac >= 0.99);
}

TEST_CASE("first order reconstruction uses cell averages") {
  const GasModel gas;
  std::mt19937_64 rng(5);
  FieldGrid f = random_field(test::unit_2d(5, 4), rng, gas);
  apply_boundaries(f, test::periodic());
  const double rate = compute_wave_speeds(f, gas).rate(f.geometry());
  FvOptions opts;
  opts.reconstruction = Reconstruction::FirstOrder;
  const FieldGrid g = euler_forward_step(f, 1.0 / (opts.q * rate), test::periodic(), opts, gas);
  g.for_interior([&](int, int, int, std::size_t idx) { CHECK(is_admissible(g[idx].euler())); });
}

}
