#pragma once

#include <utility>
#include <vector>

#include "surfflow/grid.hpp"

namespace surfflow {

// Discrete little-Hoelder diagnostics: truncated seminorm
//   [f]^R_alpha = sup_{0 < dist(x,y) < R} |f(x)-f(y)| / dist(x,y)^alpha
// with the flat periodic distance on the parameter domain.

// Brute force over all grid pairs.  In d=2 the first pair index is
// subsampled with the fixed stride below (documented diagnostic shortcut);
// d=1 always enumerates every pair.
inline constexpr int kHolderStride2d = 2;

double holder_seminorm(const ScalarField& f, double alpha, double radius);

struct HolderReport {
  double alpha = 0.0;
  double radius = 0.0;
  double seminorm = 0.0;
  std::vector<std::pair<double, double>> profile;  // (R, seminorm(R)), R decreasing
};

HolderReport holder_report(const ScalarField& f, double alpha, double radius);

// Space-time seminorm proxies over a snapshot series, modeled on
// h^{1,beta}([0,T],h^alpha) intersect h^beta([0,T],h^{2+alpha}).
struct SnapshotSeries {
  std::vector<double> t;
  std::vector<ScalarField> rho;
  std::vector<ScalarField> u;
};

struct SpacetimeNorms {
  double alpha = 0.0, beta = 0.0;
  // per field: time-Lipschitz proxy in grid sup norm, time-Hoelder (beta)
  // seminorm measured in the spatial alpha- and (2+alpha)-norms
  double rho_lip_sup = 0.0, rho_tbeta_alpha = 0.0, rho_tbeta_2alpha = 0.0;
  double u_lip_sup = 0.0, u_tbeta_alpha = 0.0, u_tbeta_2alpha = 0.0;
  double rho_e1_proxy = 0.0;  // max of the rho seminorms above
  double u_e1_proxy = 0.0;
};

// Needs >= 3 snapshots.  The (2+alpha)-norm uses spectral second derivatives.
SpacetimeNorms spacetime_norms(const SnapshotSeries& series, double alpha, double beta);

// Spatial Hoelder norms used by the report (exposed for tests).
double holder_norm_alpha(const ScalarField& f, double alpha);
double holder_norm_2alpha(const ScalarField& f, double alpha);

}  // namespace surfflow
