#include "surfflow/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "surfflow/errors.hpp"
#include "surfflow/evolution.hpp"
#include "surfflow/holder.hpp"
#include "surfflow/linop.hpp"
#include "surfflow/oracle.hpp"
#include "surfflow/pde.hpp"
#include "surfflow/spectral.hpp"

namespace surfflow {

namespace {

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& module, const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.module = module;
    r.name = name;
    try {
      auto [pass, detail] = body();
      r.pass = pass;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::pair<bool, std::string> bound(double value, double limit) {
  return {value <= limit, fmt(value) + " <= " + fmt(limit)};
}

std::pair<bool, std::string> above(double value, double limit) {
  return {value > limit, fmt(value) + " > " + fmt(limit)};
}

ScalarField sine_height(const Grid& grid, double amp) {
  ScalarField f(grid);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < (grid.dim == 2 ? grid.n : 1); ++j)
      f.v[grid.index(i, j)] =
          amp * std::sin(grid.coord(i)) * (grid.dim == 2 ? std::cos(grid.coord(j)) : 1.0);
  return f;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& config) {
  Suite suite;
  const ReferenceSurface surface = config.make_surface();
  const EnergyDensity G = config.make_density();
  const Grid grid = config.make_grid();
  const int n1 = grid.dim == 1 ? grid.n : std::min(grid.n, 64);
  const Grid grid1(1, std::max(8, n1));  // 1-d companion grid for curve checks
  const auto circle = build_reference(SurfaceKind::UnitCircle);

  suite.check("reference_surface", "unit normal has length one", [&] {
    double worst = 0.0;
    const VectorField nu = surface.sample_normal(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      double nn = 0;
      for (int c = 0; c < surface.ambient(); ++c) nn += nu.at(c, p) * nu.at(c, p);
      worst = std::max(worst, std::fabs(std::sqrt(nn) - 1.0));
    }
    return bound(worst, 1e-12);
  });

  suite.check("reference_surface", "normal is orthogonal to the tangents", [&] {
    double worst = 0.0;
    const VectorField nu = surface.sample_normal(grid);
    for (int axis = 0; axis < surface.dim(); ++axis) {
      const VectorField tau = surface.sample_tangent(grid, axis);
      const ScalarField d = dot(nu, tau);
      double tmax = 0.0;
      for (int c = 0; c < surface.ambient(); ++c)
        tmax = std::max(tmax, tau.component(c).max_abs());
      worst = std::max(worst, d.max_abs() / tmax);
    }
    return bound(worst, 1e-12);
  });

  suite.check("reference_surface", "immersion margin is positive", [&] {
    const MetricData md = assemble_geometry(surface, ScalarField(grid, 0.0));
    return above(immersion_margin(md), 0.0);
  });

  suite.check("fields_discretization", "derivative of a constant vanishes", [&] {
    return bound(diff(ScalarField(grid, 3.7), 0).max_abs(), 1e-12);
  });

  suite.check("fields_discretization", "mean of a spectral derivative vanishes", [&] {
    ScalarField f(grid1);
    for (int i = 0; i < grid1.n; ++i) f.v[i] = std::exp(std::sin(grid1.coord(i)));
    return bound(std::fabs(integrate(diff(f, 0))), 1e-12 * f.max_abs());
  });

  suite.check("fields_discretization", "spectral convergence of the derivative", [&] {
    auto err = [](int n) {
      Grid g(1, n);
      ScalarField f(g), e(g);
      for (int i = 0; i < g.n; ++i) {
        f.v[i] = std::exp(std::sin(g.coord(i)));
        e.v[i] = std::cos(g.coord(i)) * std::exp(std::sin(g.coord(i)));
      }
      return max_abs_diff(diff(f, 0), e);
    };
    const double ratio = err(16) / err(32);
    return above(ratio, 100.0);
  });

  suite.check("geometry_kernel", "curvature split matches the divergence form", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    const ScalarField Hdiv = mean_curvature_div(assemble_geometry(surface, rho));
    const QuasilinearCurvature qc = mean_curvature_quasilinear(surface, rho);
    return bound(max_abs_diff(Hdiv, qc.P_applied + qc.Q), 1e-7 * (1.0 + Hdiv.max_abs()));
  });

  suite.check("geometry_kernel", "laplacian equals div of grad", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    const MetricData md = assemble_geometry(surface, rho);
    const ScalarField f = sine_height(grid, 1.0);
    const ScalarField lap = laplace_beltrami(md, f);
    const ScalarField dg = surface_divergence(md, surface_gradient(md, f));
    return bound(max_abs_diff(lap, dg), 1e-10 * (1.0 + lap.max_abs()));
  });

  suite.check("geometry_kernel", "integral of the laplacian vanishes", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    const MetricData md = assemble_geometry(surface, rho);
    const ScalarField f = sine_height(grid, 1.0);
    return bound(std::fabs(integrate(laplace_beltrami(md, f), md.sqrt_det)), 1e-9);
  });

  suite.check("geometry_kernel", "integration by parts on the closed surface", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    const MetricData md = assemble_geometry(surface, rho);
    ScalarField f(grid), g2(grid);
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < (grid.dim == 2 ? grid.n : 1); ++j) {
        f.v[grid.index(i, j)] = std::sin(grid.coord(i));
        g2.v[grid.index(i, j)] = std::cos(2 * grid.coord(grid.dim == 2 ? j : i));
      }
    const double lhs = integrate(surface_divergence(md, surface_gradient(md, f)) * g2,
                                 md.sqrt_det);
    const double rhs = -integrate(dot(surface_gradient(md, f), surface_gradient(md, g2)),
                                  md.sqrt_det);
    return bound(std::fabs(lhs - rhs), 1e-9 * (1.0 + std::fabs(rhs)));
  });

  suite.check("geometry_kernel", "a(rho) >= 1/2 and margins positive for small heights", [&] {
    const ScalarField rho = sine_height(grid, 0.1);
    if (c1_norm(rho) > 0.2) return std::make_pair(true, std::string("height out of regime"));
    const MetricData md = assemble_geometry(surface, rho);
    const auto margins = ellipticity_margin(mean_curvature_quasilinear(surface, rho));
    const bool ok = md.a.min() >= 0.5 && immersion_margin(md) > 0 && margins.p_min > 0;
    return std::make_pair(ok, "min a = " + fmt(md.a.min()) + ", min eig p = " +
                                  fmt(margins.p_min));
  });

  suite.check("material_model", "g = G - G' Id at sampled points", [&] {
    double worst = 0.0;
    for (double c = -0.5; c <= 2.0; c += 0.1)
      worst = std::max(worst, std::fabs(G.g(c) - (G.G(c) - G.G1(c) * c)));
    return bound(worst, 1e-13);
  });

  suite.check("material_model", "density admissible on the certified range", [&] {
    if (!G.certified_range)
      return std::make_pair(true, std::string("no certified range declared"));
    const auto rep = check_admissible(G, G.certified_range->first, G.certified_range->second);
    return std::make_pair(rep.admissible,
                          "min G'' = " + fmt(rep.min_gpp) + ", min g = " + fmt(rep.min_g));
  });

  suite.check("pde_core", "both forms of the diffusion term agree", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    ScalarField u(grid, 1.0);
    axpy(u, 0.3, sine_height(grid, 1.0));
    const MetricData md = assemble_geometry(surface, rho);
    const ScalarField direct = diffusion_term_direct(md, G, u);
    const ScalarField expanded = diffusion_term_expanded(md, G, u);
    return bound(max_abs_diff(direct, expanded), 1e-9 * (1.0 + direct.max_abs()));
  });

  suite.check("pde_core", "dissipation is nonnegative", [&] {
    const ScalarField rho = sine_height(grid, 0.05);
    ScalarField u(grid, 1.0);
    axpy(u, 0.3, sine_height(grid, 1.0));
    const auto rhs = system_rhs(surface, G, rho, u);
    const double d = dissipation(surface, G, rho, u, rhs.V);
    return std::make_pair(d >= 0.0, fmt(d) + " >= 0");
  });

  suite.check("evolution", "splitting matches implicit Euler on uniform circle data", [&] {
    State s;
    s.rho = ScalarField(grid1, 0.0);
    s.u = ScalarField(grid1, 1.0);
    SplitOptions opts;
    opts.tol = 1e-13;
    auto [next, stats] = step_splitting(circle, EnergyDensity::exponential(), s, 1e-3, opts);
    // scalar implicit Euler: rho = dt * (-g(1)/(1+rho))
    double rho_ie = 0.0;
    for (int it = 0; it < 60; ++it)
      rho_ie = -1e-3 * EnergyDensity::exponential().g(1.0) / (1.0 + rho_ie);
    return bound(std::fabs(next.rho.v[0] - rho_ie), 1e-10);
  });

  suite.check("oracles", "reduced-system mass invariant", [&] {
    const auto res = circle_ode_oracle(EnergyDensity::exponential(), 1.0, 1.0, 0.1, 1e-3);
    return bound(res.invariant_drift, 1e-10);
  });

  suite.check("oracles", "ellipse curvature closed form at the vertices", [&] {
    const double e0 = std::fabs(ellipse_curvature_reference(2.0, 1.0, 0.0) + 2.0);
    const double e1 = std::fabs(ellipse_curvature_reference(2.0, 1.0, M_PI / 2) + 0.25);
    return bound(std::max(e0, e1), 1e-14);
  });

  suite.check("diagnostics_holder", "seminorm monotone in the truncation radius", [&] {
    ScalarField f(grid1);
    for (int i = 0; i < grid1.n; ++i) f.v[i] = std::sin(3 * grid1.coord(i));
    double prev = -1.0;
    for (double R : {0.5, 1.0, 2.0, M_PI}) {
      const double v = holder_seminorm(f, 0.5, R);
      if (v + 1e-15 < prev) return std::make_pair(false, std::string("not monotone at R=") + fmt(R));
      prev = v;
    }
    return std::make_pair(true, std::string("nondecreasing over four radii"));
  });

  suite.check("diagnostics_holder", "seminorm scaling across exponents", [&] {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      ScalarField f(grid1);
      for (int k = 1; k <= 4; ++k) {
        const double a = amp(gen), ph = amp(gen) * M_PI;
        for (int i = 0; i < grid1.n; ++i) f.v[i] += a * std::cos(k * grid1.coord(i) + ph);
      }
      const double lhs = holder_seminorm(f, 0.3, 2.0);
      const double rhs = std::pow(2.0, 0.4) * holder_seminorm(f, 0.7, 2.0);
      if (lhs > rhs * (1 + 1e-12)) return std::make_pair(false, fmt(lhs) + " > " + fmt(rhs));
    }
    return std::make_pair(true, std::string("20 random smooth fields"));
  });

  return suite.results;
}

}  // namespace surfflow
