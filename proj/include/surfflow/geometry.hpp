#pragma once

#include <array>

#include "surfflow/grid.hpp"
#include "surfflow/surface.hpp"

namespace surfflow {

// Symmetric d x d fields are stored as [m11] (d=1) or [m11, m12, m22] (d=2);
// index (i,j) -> i+j.
inline int sym_index(int i, int j) { return i + j; }

// All first-order geometry of the height-function surface
// gamma_rho = theta-bar + rho * nu_Sigma at one time.
struct MetricData {
  Grid grid;
  int dim = 1;
  std::array<VectorField, 2> tangents;  // d_i gamma_rho
  std::array<ScalarField, 3> g;         // first fundamental form g_ij
  std::array<ScalarField, 3> ginv;      // g^ij
  ScalarField sqrt_det;                 // area element
  VectorField normal;                   // nu_rho, unit, oriented with nu_Sigma
  ScalarField a;                        // a(rho) = 1/(nu_rho . nu_Sigma)
  VectorField ref_normal;               // nu_Sigma sampled on the grid
  std::array<ScalarField, 2> drho;      // d_i rho (spectral)
};

// Quasilinear split of the mean curvature, H(rho) = P(rho)[rho] + Q(rho):
// P(rho)[u] = sum_ij p_ij d_i d_j u + sum_k p_k d_k u,  Q(rho) = q.
// The coefficient matrix [p_ij] equals [g^ij]/a(rho); the normalization is
// chosen so the identity holds exactly for H = -div_rho nu_rho.
struct QuasilinearCurvature {
  Grid grid;
  int dim = 1;
  std::array<ScalarField, 3> p;     // second-order coefficients, symmetric
  std::array<ScalarField, 2> pk;    // first-order coefficients
  ScalarField q;                    // zero-order part
  std::array<ScalarField, 3> ginv;  // metric inverse, kept for the margin report
  ScalarField P_applied;            // P(rho)[rho]
  ScalarField Q;                    // Q(rho) (== q)
};

struct EllipticityMargins {
  double p_min = 0.0;       // min over grid of smallest eigenvalue of [p_ij]
  double metric_min = 0.0;  // same for [g^ij]
};

// Throws GeometryBreakdown if det g <= 0 anywhere or the normal turned past
// perpendicular (min nu_rho . nu_Sigma <= 0).
MetricData assemble_geometry(const ReferenceSurface& surface, const ScalarField& rho);

// H = -div_rho nu_rho via the chart formula -sum g^ij d_i(nu_rho) . d_j gamma_rho.
ScalarField mean_curvature_div(const MetricData& metric);

// Throws GeometryBreakdown if [w_kl] is singular.
QuasilinearCurvature mean_curvature_quasilinear(const ReferenceSurface& surface,
                                                const ScalarField& rho);

// Linear operator P(rho) of the split applied to an arbitrary field.
ScalarField apply_P(const QuasilinearCurvature& qc, const ScalarField& u);

VectorField surface_gradient(const MetricData& metric, const ScalarField& f);
ScalarField surface_divergence(const MetricData& metric, const VectorField& F);
ScalarField laplace_beltrami(const MetricData& metric, const ScalarField& f);

// First-order coefficients C_k of the Laplace-Beltrami chart formula,
// Delta f = sum g^ij d_i d_j f + sum_k C_k d_k f.  Shared with the implicit
// operator assembly.
std::array<ScalarField, 2> laplace_lower_coeffs(const MetricData& metric);

// Minimum over grid points of the smallest singular value of [d_i gamma_rho].
double immersion_margin(const MetricData& metric);

EllipticityMargins ellipticity_margin(const QuasilinearCurvature& qc);

}  // namespace surfflow
