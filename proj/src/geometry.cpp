#include "surfflow/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "surfflow/errors.hpp"
#include "surfflow/spectral.hpp"

namespace surfflow {

namespace {

// Pointwise inverse and determinant of the stored symmetric matrix.
// Throws if det <= 0 anywhere (the matrices here must stay positive definite).
void invert_sym(const Grid& grid, int dim, const std::array<ScalarField, 3>& m,
                std::array<ScalarField, 3>& minv, ScalarField& det, const char* what) {
  det = ScalarField(grid);
  for (int s = 0; s < 3; ++s) minv[s] = ScalarField(grid);
  const std::size_t size = grid.size();
  if (dim == 1) {
    for (std::size_t i = 0; i < size; ++i) {
      det.v[i] = m[0].v[i];
      if (!(det.v[i] > 0.0)) throw GeometryBreakdown(std::string(what) + ": determinant <= 0");
      minv[0].v[i] = 1.0 / m[0].v[i];
    }
    return;
  }
  for (std::size_t i = 0; i < size; ++i) {
    const double d = m[0].v[i] * m[2].v[i] - m[1].v[i] * m[1].v[i];
    if (!(d > 0.0)) throw GeometryBreakdown(std::string(what) + ": determinant <= 0");
    det.v[i] = d;
    minv[0].v[i] = m[2].v[i] / d;
    minv[1].v[i] = -m[1].v[i] / d;
    minv[2].v[i] = m[0].v[i] / d;
  }
}

// Smallest eigenvalue of the stored symmetric matrix at one grid point.
double min_eig(const std::array<ScalarField, 3>& m, int dim, std::size_t i) {
  if (dim == 1) return m[0].v[i];
  const double tr = m[0].v[i] + m[2].v[i];
  const double det = m[0].v[i] * m[2].v[i] - m[1].v[i] * m[1].v[i];
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return 0.5 * (tr - disc);
}

std::array<VectorField, 2> spectral_diff(const VectorField& f, int dim) {
  std::array<VectorField, 2> out;
  for (int axis = 0; axis < dim; ++axis) {
    out[axis] = VectorField(f.grid, f.comps);
    for (int c = 0; c < f.comps; ++c) {
      ScalarField comp = f.component(c);
      ScalarField d = diff(comp, axis);
      double* dst = out[axis].comp(c);
      for (std::size_t i = 0; i < f.grid.size(); ++i) dst[i] = d.v[i];
    }
  }
  return out;
}

}  // namespace

MetricData assemble_geometry(const ReferenceSurface& surface, const ScalarField& rho) {
  if (!rho.all_finite()) throw GeometryBreakdown("assemble_geometry: rho is not finite");
  const Grid& grid = rho.grid;
  const int dim = surface.dim();
  if (grid.dim != dim) throw std::invalid_argument("rho grid does not match surface dimension");

  MetricData md;
  md.grid = grid;
  md.dim = dim;
  md.ref_normal = surface.sample_normal(grid);
  const std::size_t size = grid.size();
  const int ambient = surface.ambient();

  // d_i gamma_rho = d_i theta-bar + (d_i rho) nu_Sigma + rho d_i nu_Sigma
  for (int i = 0; i < dim; ++i) {
    md.drho[i] = diff(rho, i);
    md.tangents[i] = surface.sample_tangent(grid, i);
    const VectorField dnu = surface.sample_dnormal(grid, i);
    for (int c = 0; c < ambient; ++c) {
      double* tau = md.tangents[i].comp(c);
      const double* nu = md.ref_normal.comp(c);
      const double* dn = dnu.comp(c);
      for (std::size_t p = 0; p < size; ++p)
        tau[p] += md.drho[i].v[p] * nu[p] + rho.v[p] * dn[p];
    }
  }

  std::array<ScalarField, 3> gsym;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) gsym[sym_index(i, j)] = dot(md.tangents[i], md.tangents[j]);
  md.g = gsym;
  ScalarField det;
  invert_sym(grid, dim, md.g, md.ginv, det, "assemble_geometry");
  md.sqrt_det = ScalarField(grid);
  for (std::size_t p = 0; p < size; ++p) md.sqrt_det.v[p] = std::sqrt(det.v[p]);

  // Generalized cross product of the tangents, then normalize.  The sign is
  // fixed globally at the point of strongest alignment with nu_Sigma, so a
  // genuinely inverted configuration still trips the breakdown check below.
  md.normal = VectorField(grid, ambient);
  if (dim == 1) {
    const double* t0 = md.tangents[0].comp(0);
    const double* t1 = md.tangents[0].comp(1);
    for (std::size_t p = 0; p < size; ++p) {
      md.normal.at(0, p) = -t1[p];
      md.normal.at(1, p) = t0[p];
    }
  } else {
    for (std::size_t p = 0; p < size; ++p) {
      const double u0 = md.tangents[0].at(0, p), u1 = md.tangents[0].at(1, p),
                   u2 = md.tangents[0].at(2, p);
      const double v0 = md.tangents[1].at(0, p), v1 = md.tangents[1].at(1, p),
                   v2 = md.tangents[1].at(2, p);
      md.normal.at(0, p) = u1 * v2 - u2 * v1;
      md.normal.at(1, p) = u2 * v0 - u0 * v2;
      md.normal.at(2, p) = u0 * v1 - u1 * v0;
    }
  }
  for (std::size_t p = 0; p < size; ++p) {
    double len2 = 0;
    for (int c = 0; c < ambient; ++c) len2 += md.normal.at(c, p) * md.normal.at(c, p);
    const double len = std::sqrt(len2);
    if (!(len > 0.0)) throw GeometryBreakdown("assemble_geometry: degenerate tangents");
    for (int c = 0; c < ambient; ++c) md.normal.at(c, p) /= len;
  }
  ScalarField align = dot(md.normal, md.ref_normal);
  std::size_t pmax = 0;
  for (std::size_t p = 1; p < size; ++p)
    if (std::fabs(align.v[p]) > std::fabs(align.v[pmax])) pmax = p;
  if (align.v[pmax] < 0.0) {
    for (double& x : md.normal.data) x = -x;
    for (double& x : align.v) x = -x;
  }
  md.a = ScalarField(grid);
  for (std::size_t p = 0; p < size; ++p) {
    if (!(align.v[p] > 0.0))
      throw GeometryBreakdown("assemble_geometry: normal turned past perpendicular");
    md.a.v[p] = 1.0 / align.v[p];
  }
  return md;
}

ScalarField mean_curvature_div(const MetricData& metric) {
  const int dim = metric.dim;
  ScalarField H(metric.grid);
  const auto dnu = spectral_diff(metric.normal, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const ScalarField term = dot(dnu[i], metric.tangents[j]);
      const ScalarField& gij = metric.ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < H.size(); ++p) H.v[p] -= gij.v[p] * term.v[p];
    }
  return H;
}

QuasilinearCurvature mean_curvature_quasilinear(const ReferenceSurface& surface,
                                                const ScalarField& rho) {
  if (!rho.all_finite()) throw GeometryBreakdown("mean_curvature_quasilinear: rho not finite");
  const Grid& grid = rho.grid;
  const int dim = surface.dim();
  if (grid.dim != dim) throw std::invalid_argument("rho grid does not match surface dimension");
  const std::size_t size = grid.size();
  const int ambient = surface.ambient();

  QuasilinearCurvature qc;
  qc.grid = grid;
  qc.dim = dim;

  const VectorField nu = surface.sample_normal(grid);
  std::array<VectorField, 2> dnu, e;
  std::array<ScalarField, 2> drho;
  for (int k = 0; k < dim; ++k) {
    dnu[k] = surface.sample_dnormal(grid, k);
    drho[k] = diff(rho, k);
    // e_k = d_k theta-bar + rho d_k nu_Sigma, the part of d_k gamma_rho
    // tangent to the reference surface
    e[k] = surface.sample_tangent(grid, k);
    for (int c = 0; c < ambient; ++c) {
      double* ek = e[k].comp(c);
      const double* dn = dnu[k].comp(c);
      for (std::size_t p = 0; p < size; ++p) ek[p] += rho.v[p] * dn[p];
    }
  }

  // w_kl = g_kl(theta-bar) + rho(d_k nu . d_l theta + d_l nu . d_k theta)
  //        + rho^2 d_k nu . d_l nu  ==  e_k . e_l
  std::array<ScalarField, 3> w, winv;
  for (int k = 0; k < dim; ++k)
    for (int l = k; l < dim; ++l) w[sym_index(k, l)] = dot(e[k], e[l]);
  ScalarField wdet;
  invert_sym(grid, dim, w, winv, wdet, "mean_curvature_quasilinear: [w_kl]");

  // a(rho)^2 = 1 + sum w^kl d_k rho d_l rho
  ScalarField Lfac(grid, 1.0);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      const ScalarField& wkl = winv[sym_index(k, l)];
      for (std::size_t p = 0; p < size; ++p)
        Lfac.v[p] += wkl.v[p] * drho[k].v[p] * drho[l].v[p];
    }
  for (std::size_t p = 0; p < size; ++p) {
    if (!(Lfac.v[p] > 0.0))
      throw GeometryBreakdown("mean_curvature_quasilinear: tilt factor degenerate");
    Lfac.v[p] = std::sqrt(Lfac.v[p]);
  }

  // full metric g_ij = w_ij + d_i rho d_j rho and its inverse
  std::array<ScalarField, 3> g = w, ginv;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      ScalarField& gij = g[sym_index(i, j)];
      for (std::size_t p = 0; p < size; ++p) gij.v[p] += drho[i].v[p] * drho[j].v[p];
    }
  ScalarField gdet;
  invert_sym(grid, dim, g, ginv, gdet, "mean_curvature_quasilinear: [g_ij]");
  qc.ginv = ginv;

  // p_ij = [w^ij(1 + |grad rho|_w^2) - w^ik w^jl d_k rho d_l rho] / (...)^{3/2}
  //      = g^ij / a(rho)
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      ScalarField pij(grid);
      const ScalarField& gij = ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < size; ++p) pij.v[p] = gij.v[p] / Lfac.v[p];
      qc.p[sym_index(i, j)] = pij;
    }

  // m_ij = d_i d_j theta-bar + rho d_i(d_j nu_Sigma); the normal derivative
  // factor is differentiated spectrally from its analytic samples
  std::array<std::array<VectorField, 2>, 2> m;
  for (int j = 0; j < dim; ++j) {
    const auto ddnu = spectral_diff(dnu[j], dim);
    for (int i = 0; i < dim; ++i) {
      m[i][j] = surface.sample_second(grid, i, j);
      for (int c = 0; c < ambient; ++c) {
        double* mc = m[i][j].comp(c);
        const double* dd = ddnu[i].comp(c);
        for (std::size_t p = 0; p < size; ++p) mc[p] += rho.v[p] * dd[p];
      }
    }
  }

  // q = (1/a) sum_ij g^ij (nu_Sigma . m_ij)
  qc.q = ScalarField(grid);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const ScalarField numij = dot(nu, m[i][j]);
      const ScalarField& gij = ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < size; ++p) qc.q.v[p] += gij.v[p] * numij.v[p];
    }
  for (std::size_t p = 0; p < size; ++p) qc.q.v[p] /= Lfac.v[p];

  // p_k = -(1/a) sum_l w^kl [ sum_ij g^ij (e_l . m_ij + 2 d_j rho (e_l . d_i nu)) ]
  for (int k = 0; k < dim; ++k) {
    ScalarField acc(grid);
    for (int l = 0; l < dim; ++l) {
      ScalarField inner(grid);
      for (int i = 0; i < dim; ++i) {
        const ScalarField el_dnui = dot(e[l], dnu[i]);
        for (int j = 0; j < dim; ++j) {
          const ScalarField el_mij = dot(e[l], m[i][j]);
          const ScalarField& gij = ginv[sym_index(i, j)];
          for (std::size_t p = 0; p < size; ++p)
            inner.v[p] += gij.v[p] * (el_mij.v[p] + 2.0 * drho[j].v[p] * el_dnui.v[p]);
        }
      }
      const ScalarField& wkl = winv[sym_index(k, l)];
      for (std::size_t p = 0; p < size; ++p) acc.v[p] += wkl.v[p] * inner.v[p];
    }
    for (std::size_t p = 0; p < size; ++p) acc.v[p] = -acc.v[p] / Lfac.v[p];
    qc.pk[k] = acc;
  }

  qc.Q = qc.q;
  qc.P_applied = apply_P(qc, rho);
  return qc;
}

ScalarField apply_P(const QuasilinearCurvature& qc, const ScalarField& u) {
  ScalarField out(qc.grid);
  for (int i = 0; i < qc.dim; ++i)
    for (int j = 0; j < qc.dim; ++j) {
      const ScalarField dd = diff_ij(u, i, j);
      const ScalarField& pij = qc.p[sym_index(i, j)];
      for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += pij.v[p] * dd.v[p];
    }
  for (int k = 0; k < qc.dim; ++k) {
    const ScalarField du = diff(u, k);
    for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += qc.pk[k].v[p] * du.v[p];
  }
  return out;
}

VectorField surface_gradient(const MetricData& metric, const ScalarField& f) {
  const int dim = metric.dim;
  VectorField out(metric.grid, metric.normal.comps);
  std::array<ScalarField, 2> df;
  for (int i = 0; i < dim; ++i) df[i] = diff(f, i);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const ScalarField& gij = metric.ginv[sym_index(i, j)];
      for (int c = 0; c < out.comps; ++c) {
        double* oc = out.comp(c);
        const double* tc = metric.tangents[j].comp(c);
        for (std::size_t p = 0; p < metric.grid.size(); ++p)
          oc[p] += gij.v[p] * df[i].v[p] * tc[p];
      }
    }
  return out;
}

ScalarField surface_divergence(const MetricData& metric, const VectorField& F) {
  const int dim = metric.dim;
  ScalarField out(metric.grid);
  const auto dF = spectral_diff(F, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const ScalarField term = dot(dF[i], metric.tangents[j]);
      const ScalarField& gij = metric.ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += gij.v[p] * term.v[p];
    }
  return out;
}

std::array<ScalarField, 2> laplace_lower_coeffs(const MetricData& metric) {
  const int dim = metric.dim;
  const std::size_t size = metric.grid.size();
  std::array<ScalarField, 2> coeffs;
  for (int k = 0; k < dim; ++k) {
    // W_k = sum_l g^kl d_l gamma_rho
    VectorField W(metric.grid, metric.normal.comps);
    for (int l = 0; l < dim; ++l) {
      const ScalarField& gkl = metric.ginv[sym_index(k, l)];
      for (int c = 0; c < W.comps; ++c) {
        double* wc = W.comp(c);
        const double* tc = metric.tangents[l].comp(c);
        for (std::size_t p = 0; p < size; ++p) wc[p] += gkl.v[p] * tc[p];
      }
    }
    // C_k = sum_ij g^ij d_i(W_k) . d_j gamma_rho
    coeffs[k] = surface_divergence(metric, W);
  }
  return coeffs;
}

ScalarField laplace_beltrami(const MetricData& metric, const ScalarField& f) {
  const int dim = metric.dim;
  ScalarField out(metric.grid);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const ScalarField dd = diff_ij(f, i, j);
      const ScalarField& gij = metric.ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += gij.v[p] * dd.v[p];
    }
  const auto coeffs = laplace_lower_coeffs(metric);
  for (int k = 0; k < dim; ++k) {
    const ScalarField df = diff(f, k);
    for (std::size_t p = 0; p < out.size(); ++p) out.v[p] += coeffs[k].v[p] * df.v[p];
  }
  return out;
}

double immersion_margin(const MetricData& metric) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < metric.grid.size(); ++p)
    m = std::min(m, std::sqrt(std::max(0.0, min_eig(metric.g, metric.dim, p))));
  return m;
}

EllipticityMargins ellipticity_margin(const QuasilinearCurvature& qc) {
  EllipticityMargins out;
  out.p_min = std::numeric_limits<double>::infinity();
  out.metric_min = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < qc.grid.size(); ++p) {
    out.p_min = std::min(out.p_min, min_eig(qc.p, qc.dim, p));
    out.metric_min = std::min(out.metric_min, min_eig(qc.ginv, qc.dim, p));
  }
  return out;
}

}  // namespace surfflow
