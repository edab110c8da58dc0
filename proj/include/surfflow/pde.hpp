#pragma once

#include "surfflow/geometry.hpp"
#include "surfflow/material.hpp"
#include "surfflow/surface.hpp"

namespace surfflow {

// Fixed-domain right-hand sides and the state functionals of the coupled
// system  d_t rho = g(u) a(rho) H(rho),
//         d_t u   = Delta_rho G'(u) + g(u) a(rho) H(rho) nu_Sigma.grad_rho u
//                   + g(u) H(rho)^2 u.

struct SystemRHS {
  ScalarField drho_dt;
  ScalarField du_dt;
  ScalarField V;  // normal velocity, V = d_t rho / a(rho) = g(u) H(rho)
  ScalarField H;
};

// Both right-hand sides from one geometry assembly.
SystemRHS system_rhs(const ReferenceSurface& surface, const EnergyDensity& G,
                     const ScalarField& rho, const ScalarField& u,
                     bool freeze_concentration = false);

ScalarField rhs_height(const ReferenceSurface& surface, const EnergyDensity& G,
                       const ScalarField& rho, const ScalarField& u);
ScalarField rhs_concentration(const ReferenceSurface& surface, const EnergyDensity& G,
                              const ScalarField& rho, const ScalarField& u);

// Expanded chain-rule form G''(u) Delta u + G'''(u) |grad u|^2 of the
// diffusion term; cross-check for the direct Delta(G'(u)) assembly.
ScalarField diffusion_term_direct(const MetricData& metric, const EnergyDensity& G,
                                  const ScalarField& u);
ScalarField diffusion_term_expanded(const MetricData& metric, const EnergyDensity& G,
                                    const ScalarField& u);

// E = int G(u) dA
double energy(const ReferenceSurface& surface, const EnergyDensity& G, const ScalarField& rho,
              const ScalarField& u);
double energy(const MetricData& metric, const EnergyDensity& G, const ScalarField& u);

// int u dA
double mass(const ReferenceSurface& surface, const ScalarField& rho, const ScalarField& u);
double mass(const MetricData& metric, const ScalarField& u);

// int |grad_rho G'(u)|^2 + V^2 dA  (>= 0; the energy decays at this rate)
double dissipation(const ReferenceSurface& surface, const EnergyDensity& G,
                   const ScalarField& rho, const ScalarField& u, const ScalarField& V);
double dissipation(const MetricData& metric, const EnergyDensity& G, const ScalarField& u,
                   const ScalarField& V);

}  // namespace surfflow
