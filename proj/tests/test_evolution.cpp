#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "surfflow/errors.hpp"
#include "surfflow/evolution.hpp"
#include "surfflow/oracle.hpp"
#include "surfflow/spectral.hpp"
#include "test_util.hpp"

using namespace surfflow;
using surfflow::testutil::make_field;

namespace {

RunConfig circle_config() {
  RunConfig cfg;
  cfg.surface_kind = SurfaceKind::UnitCircle;
  cfg.n = 64;
  cfg.density_kind = DensityKind::Exponential;
  cfg.u0.offset = 1.0;
  cfg.scheme = IntegratorScheme::RK4;
  cfg.dt = 1e-4;
  cfg.T = 0.02;
  cfg.raw_json = "{}";
  return cfg;
}

State uniform_circle_state(const Grid& grid, double rho0, double u0) {
  State s;
  s.t = 0.0;
  s.rho = ScalarField(grid, rho0);
  s.u = ScalarField(grid, u0);
  return s;
}

}  // namespace

TEST_CASE("explicit step consistency as dt -> 0") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 32);
  State state = uniform_circle_state(grid, 0.0, 1.0);
  state.rho = make_field(grid, [](double x) { return 0.05 * std::sin(x); });

  const double dt = 1e-5;
  const State next = step_explicit(s, G, state, dt);
  const auto rhs = system_rhs(s, G, state.rho, state.u);
  // one step differs from the Euler predictor by O(dt^2)
  ScalarField euler_rho = state.rho;
  axpy(euler_rho, dt, rhs.drho_dt);
  ScalarField euler_u = state.u;
  axpy(euler_u, dt, rhs.du_dt);
  CHECK(max_abs_diff(next.rho, euler_rho) <= 100 * dt * dt);
  CHECK(max_abs_diff(next.u, euler_u) <= 100 * dt * dt);
  CHECK(next.t == doctest::Approx(dt));
}

TEST_CASE("one RK4 step matches the circle reduction at fifth order") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 16);
  const State state = uniform_circle_state(grid, 0.0, 1.0);
  const double dt = 1e-2;
  const State next = step_explicit(s, G, state, dt);
  const auto oracle = circle_ode_oracle(G, 1.0, 1.0, dt, dt / 100.0);
  CHECK(std::fabs(1.0 + next.rho.v[0] - oracle.r.back()) <= 1e-9);
  CHECK(std::fabs(next.u.v[0] - oracle.c.back()) <= 1e-9);
}

TEST_CASE("RK4 is fourth order on the shrinking-circle closed form") {
  // u0 = 0 stays zero, g(0) = 1, so r(t) = sqrt(1 - 2t) exactly; T close
  // enough to blow-up that the dt^4 error is far above rounding
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 16);
  const double T = 0.45;
  auto error_at = [&](double dt) {
    State state = uniform_circle_state(grid, 0.0, 0.0);
    const long steps = std::lround(T / dt);
    for (long k = 0; k < steps; ++k) state = step_explicit(s, G, state, dt);
    return std::fabs(1.0 + state.rho.v[0] - std::sqrt(1.0 - 2.0 * T));
  };
  const double e1 = error_at(1e-3), e2 = error_at(5e-4), e3 = error_at(2.5e-4);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.3));
  CHECK(e2 / e3 == doctest::Approx(16.0).epsilon(0.3));
}

TEST_CASE("splitting stage 1 equals the implicit Euler solution on uniform data") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 32);
  const State state = uniform_circle_state(grid, 0.0, 1.0);
  SplitOptions opts;
  opts.tol = 1e-13;
  opts.freeze_concentration = true;
  const double dt = 1e-3;
  auto [next, stats] = step_splitting(s, G, state, dt, opts);

  // scalar implicit Euler: x = dt * (-g(1) / (1 + x)), solved by iteration
  double x = 0.0;
  for (int k = 0; k < 100; ++k) x = -dt * G.g(1.0) / (1.0 + x);
  for (double v : next.rho.v) CHECK(v == doctest::Approx(x).epsilon(1e-10));
  CHECK(stats.iters_h >= 2);
  CHECK(next.u.v[0] == 1.0);
}

TEST_CASE("huge tolerance returns after a single sweep (semi-implicit mode)") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 32);
  const State state = uniform_circle_state(grid, 0.0, 1.0);
  SplitOptions opts;
  opts.tol = 1.0;
  auto [next, stats] = step_splitting(s, G, state, 1e-3, opts);
  CHECK(stats.iters_h == 1);
  CHECK(stats.iters_c == 1);
  CHECK_FALSE(stats.contraction_h.has_value());
}

TEST_CASE("splitting contracts and the factor shrinks with dt") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 64);
  State state;
  state.rho = make_field(grid, [](double x) { return 0.03 * std::cos(2 * x); });
  state.u = make_field(grid, [](double x) { return 1.0 + 0.2 * std::sin(x); });

  double prev_factor = 1.0;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    SplitOptions opts;
    opts.tol = 1e-10;
    auto [next, stats] = step_splitting(s, G, state, dt, opts);
    REQUIRE(stats.contraction_h.has_value());
    CHECK(*stats.contraction_h < 1.0);
    CHECK(*stats.contraction_h <= prev_factor + 1e-12);
    CHECK(stats.iters_h <= 10);
    CHECK(stats.iters_c <= 10);
    prev_factor = *stats.contraction_h;
  }
}

TEST_CASE("explicit lower-order treatment still contracts, at a larger factor") {
  // measured comparison: dropping the frozen first/zero-order terms from the
  // implicit concentration operator must not break the contraction at these
  // step sizes, only worsen the factor
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 64);
  State state;
  state.rho = make_field(grid, [](double x) { return 0.03 * std::cos(2 * x); });
  state.u = make_field(grid, [](double x) { return 1.0 + 0.2 * std::sin(x); });

  for (double dt : {1e-3, 5e-4}) {
    SplitOptions full;
    full.tol = 1e-10;
    SplitOptions principal = full;
    principal.implicit_lower_order = false;
    auto [next_full, stats_full] = step_splitting(s, G, state, dt, full);
    auto [next_p, stats_p] = step_splitting(s, G, state, dt, principal);
    REQUIRE(stats_full.contraction_c.has_value());
    REQUIRE(stats_p.contraction_c.has_value());
    CHECK(*stats_p.contraction_c < 1.0);
    CHECK(*stats_p.contraction_c >= *stats_full.contraction_c);
    // both fixed points solve the same implicit-Euler equation
    CHECK(max_abs_diff(next_full.u, next_p.u) <= 1e-8);
  }
}

TEST_CASE("splitting converges to the explicit trajectory at first order") {
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 16);
  const double T = 0.1;
  const auto oracle = circle_ode_oracle(G, 1.0, 1.0, T, 1e-5);

  auto error_at = [&](double dt) {
    State state = uniform_circle_state(grid, 0.0, 1.0);
    SplitOptions opts;
    opts.tol = 1e-12;
    const long steps = std::lround(T / dt);
    for (long k = 0; k < steps; ++k) state = step_splitting(s, G, state, dt, opts).first;
    return std::fabs(1.0 + state.rho.v[0] - oracle.r.back());
  };
  const double e1 = error_at(2e-3), e2 = error_at(1e-3), e3 = error_at(5e-4);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));  // implicit Euler order
  CHECK(e2 / e3 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("divergent frozen operator raises NoConvergence") {
  // operators frozen at u = 3 (G'' = e^{-3}) while the state sits near
  // u = -0.8 (G'' = e^{0.8}, 45x stiffer): at this dt the fixed point
  // expands instead of contracting
  const auto s = build_reference(SurfaceKind::UnitCircle);
  const auto G = EnergyDensity::exponential();
  Grid grid(1, 64);
  State state;
  state.rho = ScalarField(grid, 0.0);
  state.u = make_field(grid, [](double x) { return -0.8 + 0.1 * std::cos(20 * x); });
  SplitOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 8;
  opts.linearization = Linearization::FrozenAtZero;
  opts.u0_of_run = ScalarField(grid, 3.0);
  CHECK_THROWS_AS(step_splitting(s, G, state, 0.1, opts), NoConvergence);
}

TEST_CASE("run with T=0 yields only the initial snapshot") {
  RunConfig cfg = circle_config();
  cfg.T = 0.0;
  const Trajectory traj = run(cfg);
  CHECK(traj.termination == Termination::Completed);
  REQUIRE(traj.snapshots.size() == 1);
  CHECK(traj.snapshots[0].state.t == 0.0);
  CHECK(traj.snapshots[0].diag.energy == doctest::Approx(kTwoPi * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("energy decreases and mass is conserved along an explicit run") {
  RunConfig cfg = circle_config();
  cfg.u0.modes.push_back({{1}, 0.2, 0.0});
  cfg.snapshot_interval = 1e-3;
  const Trajectory traj = run(cfg);
  REQUIRE(traj.termination == Termination::Completed);
  REQUIRE(traj.snapshots.size() >= 10);
  const double mass0 = traj.snapshots.front().diag.mass;
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const auto& prev = traj.snapshots[k - 1];
    const auto& cur = traj.snapshots[k];
    CHECK(cur.state.t > prev.state.t);
    CHECK(cur.diag.energy <= prev.diag.energy + 1e-9 * std::fabs(prev.diag.energy));
    CHECK(std::fabs(cur.diag.mass - mass0) <= 1e-6 * std::fabs(mass0));
  }
}

TEST_CASE("energy-law mismatch shrinks under refinement") {
  auto worst_mismatch = [](int n, double interval) {
    RunConfig cfg = circle_config();
    cfg.n = n;
    cfg.T = 0.02;
    cfg.u0.modes.push_back({{1}, 0.2, 0.0});
    cfg.snapshot_interval = interval;
    const Trajectory traj = run(cfg);
    REQUIRE(traj.termination == Termination::Completed);
    double worst = 0.0;
    const auto& s = traj.snapshots;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
      const double dEdt =
          (s[k + 1].diag.energy - s[k - 1].diag.energy) / (s[k + 1].state.t - s[k - 1].state.t);
      worst = std::max(worst, std::fabs(dEdt + s[k].diag.dissipation) / s[k].diag.dissipation);
    }
    return worst;
  };
  // halving the sampling interval of dE/dt quarters the centered-difference
  // mismatch; refining n must not degrade it
  const double coarse = worst_mismatch(64, 2e-3);
  const double fine = worst_mismatch(64, 1e-3);
  CHECK(coarse <= 1e-3);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.4));
  CHECK(worst_mismatch(128, 1e-3) <= 1.2 * fine + 1e-9);
}

TEST_CASE("uniform data stays uniform and tracks the reduced system") {
  RunConfig cfg = circle_config();
  cfg.T = 0.05;
  const Trajectory traj = run(cfg);
  REQUIRE(traj.termination == Termination::Completed);
  const auto oracle = circle_ode_oracle(cfg.make_density(), 1.0, 1.0, cfg.T, cfg.dt);
  const auto& last = traj.snapshots.back();
  CHECK(std::fabs(1.0 + last.state.rho.mean() - oracle.r.back()) <= 1e-8);
  CHECK(std::fabs(last.state.u.mean() - oracle.c.back()) <= 1e-8);
  for (double v : last.state.rho.v)
    CHECK(std::fabs(v - last.state.rho.mean()) <= 1e-10);
}

TEST_CASE("continuous dependence on the initial height") {
  const double eps = 1e-6;
  RunConfig cfg = circle_config();
  cfg.T = 0.05;
  const Trajectory base = run(cfg);
  RunConfig cfg2 = cfg;
  cfg2.rho0.modes.push_back({{1}, eps, -M_PI / 2});  // eps * sin x
  const Trajectory pert = run(cfg2);
  REQUIRE(base.termination == Termination::Completed);
  REQUIRE(pert.termination == Termination::Completed);
  REQUIRE(base.snapshots.size() == pert.snapshots.size());
  for (std::size_t k = 0; k < base.snapshots.size(); ++k) {
    CHECK(max_abs_diff(base.snapshots[k].state.rho, pert.snapshots[k].state.rho) <= 100 * eps);
  }
}

TEST_CASE("range violation terminates the run with the recorded reason") {
  // u grows toward the g = 0 equilibrium at u = 1 and crosses the tighter
  // certified bound 0.98 on the way
  RunConfig cfg = circle_config();
  cfg.density_kind = DensityKind::ShiftedQuadratic;
  cfg.density_params = {1.0, 1.0};
  cfg.certified_range = {{0.0, 0.98}};
  cfg.u0.offset = 0.95;
  cfg.T = 0.5;
  cfg.dt = 1e-3;
  const Trajectory traj = run(cfg);
  CHECK(traj.termination == Termination::RangeViolation);
  CHECK_FALSE(traj.snapshots.empty());
  const auto surface = cfg.make_surface();
  const auto density = cfg.make_density();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    if (k > 0) CHECK(traj.snapshots[k].state.t > traj.snapshots[k - 1].state.t);
    // every emitted state satisfies the state invariants
    CHECK_NOTHROW(assemble_geometry(surface, traj.snapshots[k].state.rho));
    CHECK_NOTHROW(density.require_in_range(traj.snapshots[k].state.u));
  }
}

TEST_CASE("splitting run matches the explicit run to first order in dt") {
  RunConfig cfg = circle_config();
  cfg.T = 0.02;
  cfg.dt = 5e-4;
  cfg.u0.modes.push_back({{1}, 0.1, 0.0});
  const Trajectory explicit_run = run(cfg);
  RunConfig cfg2 = cfg;
  cfg2.scheme = IntegratorScheme::Splitting;
  const Trajectory split_run = run(cfg2);
  REQUIRE(explicit_run.termination == Termination::Completed);
  REQUIRE(split_run.termination == Termination::Completed);
  const auto& a = explicit_run.snapshots.back();
  const auto& b = split_run.snapshots.back();
  CHECK(a.state.t == doctest::Approx(b.state.t));
  CHECK(max_abs_diff(a.state.rho, b.state.rho) <= 10 * cfg.dt);
  CHECK(max_abs_diff(a.state.u, b.state.u) <= 10 * cfg.dt);
}

TEST_CASE("time-lipschitz proxy of the height matches the reduction derivative") {
  RunConfig cfg = circle_config();
  cfg.T = 0.1;
  cfg.dt = 1e-3;
  cfg.snapshot_interval = 1e-3;
  cfg.n = 32;
  const Trajectory traj = run(cfg);
  REQUIRE(traj.termination == Termination::Completed);
  const auto norms = spacetime_norms(traj.series(), 0.5, 0.2);

  const auto oracle = circle_ode_oracle(cfg.make_density(), 1.0, 1.0, cfg.T, 1e-4);
  double max_speed = 0.0;
  for (std::size_t k = 0; k < oracle.t.size(); ++k) {
    const auto G = cfg.make_density();
    max_speed = std::max(max_speed, G.g(oracle.c[k]) / oracle.r[k]);
  }
  CHECK(norms.rho_lip_sup == doctest::Approx(max_speed).epsilon(0.05));

  // halving the snapshot interval halves the finite-difference gap
  RunConfig fine = cfg;
  fine.snapshot_interval = 5e-4;
  fine.dt = 5e-4;
  const auto norms_fine = spacetime_norms(run(fine).series(), 0.5, 0.2);
  const double gap = std::fabs(norms.rho_lip_sup - max_speed);
  const double gap_fine = std::fabs(norms_fine.rho_lip_sup - max_speed);
  CHECK(gap_fine <= 0.75 * gap);
}
