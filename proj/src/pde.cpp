#include "surfflow/pde.hpp"

#include "surfflow/spectral.hpp"

namespace surfflow {

SystemRHS system_rhs(const ReferenceSurface& surface, const EnergyDensity& G,
                     const ScalarField& rho, const ScalarField& u, bool freeze_concentration) {
  // geometry first: when both fail in one step, GeometryBreakdown outranks
  // RangeViolation
  const MetricData metric = assemble_geometry(surface, rho);
  G.require_in_range(u);
  const std::size_t size = rho.size();

  SystemRHS out;
  out.H = mean_curvature_div(metric);
  const ScalarField gu = G.map_g(u);

  out.V = ScalarField(rho.grid);
  out.drho_dt = ScalarField(rho.grid);
  for (std::size_t p = 0; p < size; ++p) {
    out.V.v[p] = gu.v[p] * out.H.v[p];
    out.drho_dt.v[p] = out.V.v[p] * metric.a.v[p];
  }

  if (freeze_concentration) {
    out.du_dt = ScalarField(rho.grid);
    return out;
  }

  out.du_dt = diffusion_term_direct(metric, G, u);
  const VectorField grad_u = surface_gradient(metric, u);
  const ScalarField nu_dot_grad = dot(metric.ref_normal, grad_u);
  for (std::size_t p = 0; p < size; ++p) {
    out.du_dt.v[p] += out.drho_dt.v[p] * nu_dot_grad.v[p] +
                      gu.v[p] * out.H.v[p] * out.H.v[p] * u.v[p];
  }
  return out;
}

ScalarField rhs_height(const ReferenceSurface& surface, const EnergyDensity& G,
                       const ScalarField& rho, const ScalarField& u) {
  return system_rhs(surface, G, rho, u, true).drho_dt;
}

ScalarField rhs_concentration(const ReferenceSurface& surface, const EnergyDensity& G,
                              const ScalarField& rho, const ScalarField& u) {
  return system_rhs(surface, G, rho, u, false).du_dt;
}

ScalarField diffusion_term_direct(const MetricData& metric, const EnergyDensity& G,
                                  const ScalarField& u) {
  return laplace_beltrami(metric, G.map_G1(u));
}

ScalarField diffusion_term_expanded(const MetricData& metric, const EnergyDensity& G,
                                    const ScalarField& u) {
  ScalarField out = G.map_G2(u) * laplace_beltrami(metric, u);
  const VectorField grad_u = surface_gradient(metric, u);
  const ScalarField grad_sq = dot(grad_u, grad_u);
  const ScalarField g3 = G.map_G3(u);
  for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += g3.v[p] * grad_sq.v[p];
  return out;
}

double energy(const MetricData& metric, const EnergyDensity& G, const ScalarField& u) {
  return integrate(G.map_G(u), metric.sqrt_det);
}

double energy(const ReferenceSurface& surface, const EnergyDensity& G, const ScalarField& rho,
              const ScalarField& u) {
  return energy(assemble_geometry(surface, rho), G, u);
}

double mass(const MetricData& metric, const ScalarField& u) {
  return integrate(u, metric.sqrt_det);
}

double mass(const ReferenceSurface& surface, const ScalarField& rho, const ScalarField& u) {
  return mass(assemble_geometry(surface, rho), u);
}

double dissipation(const MetricData& metric, const EnergyDensity& G, const ScalarField& u,
                   const ScalarField& V) {
  const VectorField grad = surface_gradient(metric, G.map_G1(u));
  ScalarField density = dot(grad, grad);
  for (std::size_t p = 0; p < density.size(); ++p) density.v[p] += V.v[p] * V.v[p];
  return integrate(density, metric.sqrt_det);
}

double dissipation(const ReferenceSurface& surface, const EnergyDensity& G,
                   const ScalarField& rho, const ScalarField& u, const ScalarField& V) {
  return dissipation(assemble_geometry(surface, rho), G, u, V);
}

}  // namespace surfflow
