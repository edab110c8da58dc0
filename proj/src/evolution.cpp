#include "surfflow/evolution.hpp"

#include <cmath>

#include "surfflow/errors.hpp"
#include "surfflow/linop.hpp"
#include "surfflow/spectral.hpp"

namespace surfflow {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::GeometryBreakdown: return "geometry_breakdown";
    case Termination::RangeViolation: return "range_violation";
    case Termination::NoConvergence: return "no_convergence";
    case Termination::TiltBound: return "a_below_minimum";
    case Termination::ImmersionBound: return "immersion_below_minimum";
    case Termination::EllipticityLost: return "ellipticity_lost";
  }
  return "?";
}

SnapshotSeries Trajectory::series() const {
  SnapshotSeries s;
  for (const auto& snap : snapshots) {
    s.t.push_back(snap.state.t);
    s.rho.push_back(snap.state.rho);
    s.u.push_back(snap.state.u);
  }
  return s;
}

State step_explicit(const ReferenceSurface& surface, const EnergyDensity& G, const State& state,
                    double dt, bool freeze_concentration) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_explicit: dt must be positive");
  auto eval = [&](const ScalarField& rho, const ScalarField& u) {
    return system_rhs(surface, G, rho, u, freeze_concentration);
  };
  auto advance = [&](const SystemRHS& k, double factor) {
    State s;
    s.rho = state.rho;
    axpy(s.rho, factor, k.drho_dt);
    s.u = state.u;
    axpy(s.u, factor, k.du_dt);
    return s;
  };
  const SystemRHS k1 = eval(state.rho, state.u);
  const State s2 = advance(k1, 0.5 * dt);
  const SystemRHS k2 = eval(s2.rho, s2.u);
  const State s3 = advance(k2, 0.5 * dt);
  const SystemRHS k3 = eval(s3.rho, s3.u);
  const State s4 = advance(k3, dt);
  const SystemRHS k4 = eval(s4.rho, s4.u);

  State out;
  out.t = state.t + dt;
  out.rho = state.rho;
  out.u = state.u;
  const double w = dt / 6.0;
  axpy(out.rho, w, k1.drho_dt);
  axpy(out.rho, 2 * w, k2.drho_dt);
  axpy(out.rho, 2 * w, k3.drho_dt);
  axpy(out.rho, w, k4.drho_dt);
  axpy(out.u, w, k1.du_dt);
  axpy(out.u, 2 * w, k2.du_dt);
  axpy(out.u, 2 * w, k3.du_dt);
  axpy(out.u, w, k4.du_dt);
  return out;
}

namespace {

struct FixedPointResult {
  ScalarField value;
  int iters = 0;
  std::optional<double> contraction;
};

// y^{k+1} = (I - dt A)^{-1} [ y_n + dt (F(y^k) - A y^k) ]; the fixed point is
// the implicit-Euler solution of y' = F(y).  Stops once the sup-norm
// correction drops below tol.
template <class Rhs>
FixedPointResult fixed_point_solve(const DenseOperator& A, const ImplicitSolver& solver,
                                   const ScalarField& y_n, Rhs&& F, double dt, double tol,
                                   int max_iter, const char* stage) {
  FixedPointResult res;
  res.value = y_n;
  double prev_delta = 0.0;
  double last_factor = 0.0;
  for (int k = 1; k <= max_iter; ++k) {
    ScalarField resid = F(res.value);            // nonlinear right-hand side at y^k
    axpy(resid, -1.0, A.apply(res.value));       // remainder F(y^k) - A y^k
    ScalarField rhs = y_n;
    axpy(rhs, dt, resid);
    ScalarField next = solver.solve(rhs);
    const double delta = max_abs_diff(next, res.value);
    if (!std::isfinite(delta))
      throw NoConvergence(std::string(stage) + " fixed point diverged (non-finite iterate)");
    res.value = std::move(next);
    res.iters = k;
    if (k >= 2 && prev_delta > 0.0) {
      last_factor = delta / prev_delta;
      res.contraction = std::max(res.contraction.value_or(0.0), last_factor);
    }
    if (delta < tol) return res;
    prev_delta = delta;
  }
  if (last_factor >= 1.0)
    throw NoConvergence(std::string(stage) +
                        " fixed point reached max_iter with contraction factor >= 1");
  return res;  // still contracting, accept the last iterate
}

}  // namespace

std::pair<State, SplitStats> step_splitting(const ReferenceSurface& surface,
                                            const EnergyDensity& G, const State& state, double dt,
                                            const SplitOptions& opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_splitting: dt must be positive");
  const Grid& grid = state.rho.grid;

  const bool frozen_at_zero = opts.linearization == Linearization::FrozenAtZero;
  const ScalarField rho_star = frozen_at_zero ? ScalarField(grid, 0.0) : state.rho;
  const ScalarField u_star =
      frozen_at_zero ? (opts.u0_of_run ? *opts.u0_of_run : state.u) : state.u;

  SplitStats stats;
  State out;
  out.t = state.t + dt;

  // Stage 1: height equation with the concentration frozen at u_n.
  {
    const DenseOperator A = height_operator(surface, G, rho_star, u_star);
    const ImplicitSolver solver(A, dt);
    auto F = [&](const ScalarField& rho) { return rhs_height(surface, G, rho, state.u); };
    FixedPointResult res =
        fixed_point_solve(A, solver, state.rho, F, dt, opts.tol, opts.max_iter, "height");
    out.rho = std::move(res.value);
    stats.iters_h = res.iters;
    stats.contraction_h = res.contraction;
  }

  // Stage 2: concentration equation with the new height inserted.
  if (opts.freeze_concentration) {
    out.u = state.u;
  } else {
    const DenseOperator A =
        concentration_operator(surface, G, rho_star, u_star, !opts.implicit_lower_order);
    const ImplicitSolver solver(A, dt);
    auto F = [&](const ScalarField& u) { return rhs_concentration(surface, G, out.rho, u); };
    FixedPointResult res =
        fixed_point_solve(A, solver, state.u, F, dt, opts.tol, opts.max_iter, "concentration");
    out.u = std::move(res.value);
    stats.iters_c = res.iters;
    stats.contraction_c = res.contraction;
  }
  return {out, stats};
}

StepDiagnostics compute_diagnostics(const ReferenceSurface& surface, const EnergyDensity& G,
                                    const State& state) {
  StepDiagnostics d;
  const MetricData md = assemble_geometry(surface, state.rho);
  const ScalarField H = mean_curvature_div(md);
  ScalarField V = G.map_g(state.u) * H;
  d.energy = energy(md, G, state.u);
  d.mass = mass(md, state.u);
  d.dissipation = dissipation(md, G, state.u, V);
  d.immersion_margin = immersion_margin(md);
  const auto margins = ellipticity_margin(mean_curvature_quasilinear(surface, state.rho));
  d.ellipticity_margin = margins.p_min;
  d.metric_margin = margins.metric_min;
  d.min_a = md.a.min();
  d.c1_rho = c1_norm(state.rho);
  return d;
}

Trajectory run(const RunConfig& config) {
  const ReferenceSurface surface = config.make_surface();
  const EnergyDensity G = config.make_density();
  const Grid grid = config.make_grid();

  State state;
  state.t = 0.0;
  state.rho = build_initial(config.rho0, grid);
  state.u = build_initial(config.u0, grid);

  const double c1_bound = config.thresholds.c1_smallness
                              ? *config.thresholds.c1_smallness
                              : 0.3 / reference_mean_curvature(surface, grid).max_abs();

  SplitOptions split;
  split.tol = config.tol;
  split.max_iter = config.max_iter;
  split.linearization = config.linearization;
  split.freeze_concentration = config.freeze_concentration;
  split.u0_of_run = state.u;

  Trajectory traj;
  const double interval = config.effective_snapshot_interval();

  // Validates a state before it is emitted.  Geometry outranks the range
  // check; margin violations that co-trigger are all listed in the message,
  // the highest-priority one names the termination.
  std::string margin_detail;
  auto check_state = [&](const State& s, StepDiagnostics& d) -> std::optional<Termination> {
    d = compute_diagnostics(surface, G, s);  // throws GeometryBreakdown first
    G.require_in_range(s.u);
    std::vector<std::pair<Termination, std::string>> violated;
    if (d.c1_rho >= c1_bound)
      violated.emplace_back(Termination::GeometryBreakdown,
                            "height left the C1 smallness regime");
    if (d.min_a < config.thresholds.a_min)
      violated.emplace_back(Termination::TiltBound, "min a(rho) below a_min");
    if (d.immersion_margin < config.thresholds.immersion_min)
      violated.emplace_back(Termination::ImmersionBound, "immersion margin below threshold");
    if (d.ellipticity_margin <= 0.0)
      violated.emplace_back(Termination::EllipticityLost, "ellipticity margin not positive");
    if (violated.empty()) return std::nullopt;
    margin_detail.clear();
    for (const auto& [term, why] : violated) {
      if (!margin_detail.empty()) margin_detail += "; ";
      margin_detail += why;
    }
    return violated.front().first;
  };

  try {
    StepDiagnostics d0;
    if (auto term = check_state(state, d0)) {
      traj.termination = *term;
      traj.termination_message = "initial state: " + margin_detail;
      traj.snapshots.push_back({state, d0});
      return traj;
    }
    traj.snapshots.push_back({state, d0});

    double next_emit = interval;
    while (state.t < config.T - 1e-12 * std::max(1.0, config.T)) {
      const double dt = std::min(config.dt, config.T - state.t);
      SplitStats stats;
      State next;
      if (config.scheme == IntegratorScheme::RK4) {
        next = step_explicit(surface, G, state, dt, config.freeze_concentration);
      } else {
        auto [s, st] = step_splitting(surface, G, state, dt, split);
        next = std::move(s);
        stats = st;
      }
      state = std::move(next);

      StepDiagnostics d;
      const auto term = check_state(state, d);
      d.iters_h = stats.iters_h;
      d.iters_c = stats.iters_c;
      d.contraction_h = stats.contraction_h;
      d.contraction_c = stats.contraction_c;

      const bool final_step = !(state.t < config.T - 1e-12 * std::max(1.0, config.T));
      if (term) {
        // the offending state still satisfies the hard invariants; keep it so
        // the violated margin is visible in the output, then stop
        traj.snapshots.push_back({state, d});
        traj.termination = *term;
        traj.termination_message = margin_detail + " at t = " + std::to_string(state.t);
        return traj;
      }
      if (state.t >= next_emit - 0.5 * dt || final_step) {
        traj.snapshots.push_back({state, d});
        while (next_emit <= state.t + 0.5 * dt) next_emit += interval;
      }
    }
    traj.termination = Termination::Completed;
  } catch (const GeometryBreakdown& e) {
    traj.termination = Termination::GeometryBreakdown;
    traj.termination_message = e.what();
  } catch (const RangeViolation& e) {
    traj.termination = Termination::RangeViolation;
    traj.termination_message = e.what();
  } catch (const NoConvergence& e) {
    traj.termination = Termination::NoConvergence;
    traj.termination_message = e.what();
  }
  return traj;
}

}  // namespace surfflow
