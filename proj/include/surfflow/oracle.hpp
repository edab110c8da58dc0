#pragma once

#include <string>
#include <vector>

#include "surfflow/material.hpp"

namespace surfflow {

// Reduced model for a circle of radius r carrying a spatially uniform
// concentration c (see docs/circle_reduction.md):
//   r' = -g(c)/r,   c' = c g(c)/r^2,   r*c conserved.
struct CircleOracleResult {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> c;
  double invariant_drift = 0.0;  // max_t |r(t)c(t) - r0 c0|
  bool blew_up = false;          // r reached 0 before T; partial result
  std::string message;

  double r_at(double time) const;  // linear interpolation between stored nodes
  double c_at(double time) const;
};

// RK4 at dt/10 substeps; stores (r,c) every dt.  Stops early with a
// blow-up notice if the radius hits zero.
CircleOracleResult circle_ode_oracle(const EnergyDensity& G, double r0, double c0, double T,
                                     double dt);

// Closed-form mean curvature of the ellipse (a cos x, b sin x) with the
// outward-normal sign convention: H(x) = -ab / (a^2 sin^2 x + b^2 cos^2 x)^{3/2}.
double ellipse_curvature_reference(double a, double b, double x);

}  // namespace surfflow
