#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfflow/grid.hpp"
#include "surfflow/material.hpp"
#include "surfflow/surface.hpp"

namespace surfflow {

enum class IntegratorScheme { RK4, Splitting };

// Linearization point of the frozen operators in the splitting scheme:
// FrozenAtZero fixes (u0-of-run, 0) for the whole run, FrozenAtCurrent
// refreezes at the current state each step.
enum class Linearization { FrozenAtZero, FrozenAtCurrent };

struct FourierMode {
  std::vector<int> k;  // mode index per dimension
  double amplitude = 0.0;
  double phase = 0.0;
};

// Initial data as a cosine-mode list: offset + sum amp * cos(k.x + phase).
struct InitialSpec {
  double offset = 0.0;
  std::vector<FourierMode> modes;
};

struct Thresholds {
  // C1-smallness bound for the height function; unset means the default
  // 0.3 / max|H_Sigma| computed on the run grid
  std::optional<double> c1_smallness;
  double immersion_min = 1e-10;
  double a_min = 0.5;
};

struct RunConfig {
  SurfaceKind surface_kind = SurfaceKind::UnitCircle;
  std::map<std::string, double> surface_params;

  int n = 64;
  DiffScheme diff_scheme = DiffScheme::Spectral;

  DensityKind density_kind = DensityKind::Exponential;
  std::vector<double> density_params;
  std::optional<std::pair<double, double>> certified_range;

  InitialSpec rho0;
  InitialSpec u0;

  IntegratorScheme scheme = IntegratorScheme::RK4;
  double dt = 1e-4;
  double T = 0.0;
  double tol = 1e-10;
  int max_iter = 25;
  Linearization linearization = Linearization::FrozenAtCurrent;
  bool freeze_concentration = false;

  Thresholds thresholds;

  std::string output_directory = "out";
  double snapshot_interval = 0.0;  // 0: max(T/50, dt)

  std::string raw_json;  // exact parsed document, echoed into run.json

  ReferenceSurface make_surface() const;
  EnergyDensity make_density() const;
  Grid make_grid() const;
  double effective_snapshot_interval() const;
};

// Strict parse: unknown keys are errors, every invariant violation names the
// offending key.  Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

ScalarField build_initial(const InitialSpec& spec, const Grid& grid);

}  // namespace surfflow
