#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfflow/config.hpp"
#include "surfflow/holder.hpp"
#include "surfflow/material.hpp"
#include "surfflow/pde.hpp"

namespace surfflow {

enum class Termination {
  Completed,
  GeometryBreakdown,   // det g <= 0 / normal past perpendicular / C1 bound left
  RangeViolation,      // concentration left the certified interval
  NoConvergence,       // fixed-point iteration expanded at max_iter
  TiltBound,           // min a(rho) fell below a_min
  ImmersionBound,      // immersion margin fell below immersion_min
  EllipticityLost      // min eig [p_ij] <= 0
};

const char* to_string(Termination t);

struct State {
  double t = 0.0;
  ScalarField rho;
  ScalarField u;
};

struct StepDiagnostics {
  double energy = 0.0;
  double mass = 0.0;
  double dissipation = 0.0;
  double immersion_margin = 0.0;
  double ellipticity_margin = 0.0;
  double metric_margin = 0.0;
  double min_a = 0.0;
  double c1_rho = 0.0;
  int iters_h = 0;
  int iters_c = 0;
  // recorded only when the fixed point ran >= 2 iterations
  std::optional<double> contraction_h;
  std::optional<double> contraction_c;
};

struct Snapshot {
  State state;
  StepDiagnostics diag;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  Termination termination = Termination::Completed;
  std::string termination_message;

  SnapshotSeries series() const;
};

// One classical RK4 step of the coupled system (or of the height equation
// alone when the concentration is frozen).
State step_explicit(const ReferenceSurface& surface, const EnergyDensity& G, const State& state,
                    double dt, bool freeze_concentration = false);

struct SplitOptions {
  double tol = 1e-10;
  int max_iter = 25;
  Linearization linearization = Linearization::FrozenAtCurrent;
  bool freeze_concentration = false;
  // concentration the frozen operators use for Linearization::FrozenAtZero
  // (the run's initial value); unset falls back to the current state
  std::optional<ScalarField> u0_of_run;
  // keep the frozen lower-order terms inside (I - dt A^c); switching this
  // off treats them explicitly and changes the measured contraction factor
  bool implicit_lower_order = true;
};

struct SplitStats {
  int iters_h = 0;
  int iters_c = 0;
  std::optional<double> contraction_h;
  std::optional<double> contraction_c;
};

// Two-stage splitting step: first the height equation with the concentration
// frozen at u_n, then the concentration equation with the new height
// inserted.  Each stage solves its implicit-Euler equation by the fixed
// point  y^{k+1} = (I - dt A)^{-1} [y_n + dt (F(y^k) - A y^k)]  with A the
// frozen linear part.  Throws NoConvergence if max_iter is reached while the
// empirical contraction factor is >= 1.
std::pair<State, SplitStats> step_splitting(const ReferenceSurface& surface,
                                            const EnergyDensity& G, const State& state, double dt,
                                            const SplitOptions& opts);

StepDiagnostics compute_diagnostics(const ReferenceSurface& surface, const EnergyDensity& G,
                                    const State& state);

// Integrates [0, T] per the configuration; terminates early on geometry
// breakdown, range violation, non-convergence, or a failed margin bound, and
// records the reason.  Emitted states always satisfy the state invariants.
Trajectory run(const RunConfig& config);

}  // namespace surfflow
