#pragma once

#include <array>
#include <map>
#include <string>

#include "surfflow/grid.hpp"

namespace surfflow {

enum class SurfaceKind { UnitCircle, Ellipse, Limacon, Torus };

const char* to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

// Closed-form data of the reference immersion at one parameter point:
// position, outward unit normal, first and second derivatives.
struct SurfacePointData {
  std::array<double, 3> pos{};
  std::array<double, 3> normal{};
  std::array<std::array<double, 3>, 2> tangent{};   // d_i theta-bar
  std::array<std::array<double, 3>, 2> dnormal{};   // d_i nu_Sigma
  std::array<std::array<std::array<double, 3>, 2>, 2> second{};  // d_i d_j theta-bar
};

// Closed immersed reference hypersurface on the periodic chart [0,2pi)^d.
// d=1: plane curves (the limacon with b in (0,1) self-intersects once but
// stays an immersion); d=2: torus of revolution.  Normals point outward so
// the sign convention H = -div nu gives H < 0 on convex curves.
struct ReferenceSurface {
  SurfaceKind kind = SurfaceKind::UnitCircle;
  double a = 1.0;       // ellipse semi-axis (x)
  double b = 1.0;       // ellipse semi-axis (y) / limacon offset
  double torus_R = 2.0; // distance center of tube to axis
  double torus_r = 0.5; // tube radius

  int dim() const { return kind == SurfaceKind::Torus ? 2 : 1; }
  int ambient() const { return dim() + 1; }

  SurfacePointData evaluate(double x1, double x2 = 0.0) const;

  VectorField sample_position(const Grid& grid) const;
  VectorField sample_normal(const Grid& grid) const;
  VectorField sample_tangent(const Grid& grid, int axis) const;
  VectorField sample_dnormal(const Grid& grid, int axis) const;
  VectorField sample_second(const Grid& grid, int axis_i, int axis_j) const;
};

// Validates parameters (positivity, torus R > r, limacon cusp at b = 1).
ReferenceSurface build_reference(SurfaceKind kind,
                                 const std::map<std::string, double>& params = {});

// Closed-form mean curvature H_Sigma of the reference surface, sampled on
// the grid.  Entirely analytic: independent oracle for the spectral route.
ScalarField reference_mean_curvature(const ReferenceSurface& surface, const Grid& grid);

}  // namespace surfflow
