#include "surfflow/holder.hpp"

#include <cmath>
#include <stdexcept>

#include "surfflow/kernels.hpp"
#include "surfflow/spectral.hpp"

namespace surfflow {

double holder_seminorm(const ScalarField& f, double alpha, double radius) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("holder_seminorm: alpha must be in (0,1)");
  if (!(radius > 0.0)) throw std::invalid_argument("holder_seminorm: radius must be positive");
  const int stride = f.grid.dim == 2 ? kHolderStride2d : 1;
  return kernels::holder_pair_sup(f.v, f.grid.dim, f.grid.n, alpha, radius, stride);
}

HolderReport holder_report(const ScalarField& f, double alpha, double radius) {
  HolderReport rep;
  rep.alpha = alpha;
  rep.radius = radius;
  rep.seminorm = holder_seminorm(f, alpha, radius);
  const double h = f.grid.spacing();
  double R = radius;
  while (R > 1.5 * h && rep.profile.size() < 8) {
    rep.profile.emplace_back(R, holder_seminorm(f, alpha, R));
    R *= 0.5;
  }
  return rep;
}

double holder_norm_alpha(const ScalarField& f, double alpha) {
  // sup-norm plus untruncated seminorm (R = 2pi covers every periodic pair)
  return f.max_abs() + holder_seminorm(f, alpha, kTwoPi);
}

double holder_norm_2alpha(const ScalarField& f, double alpha) {
  double norm = f.max_abs();
  for (int i = 0; i < f.grid.dim; ++i) {
    const ScalarField di = diff(f, i);
    norm += di.max_abs();
    for (int j = i; j < f.grid.dim; ++j) {
      const ScalarField dij = diff_ij(f, i, j);
      norm += dij.max_abs() + holder_seminorm(dij, alpha, kTwoPi);
    }
  }
  return norm;
}

namespace {

ScalarField difference(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = a.v[i] - b.v[i];
  return out;
}

struct TimeSeminorms {
  double lip_sup = 0.0;
  double tbeta_alpha = 0.0;
  double tbeta_2alpha = 0.0;
};

TimeSeminorms time_seminorms(const std::vector<double>& t, const std::vector<ScalarField>& f,
                             double alpha, double beta) {
  TimeSeminorms out;
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t l = k + 1; l < t.size(); ++l) {
      const double dt = std::fabs(t[l] - t[k]);
      if (dt <= 0.0) continue;
      const ScalarField d = difference(f[l], f[k]);
      out.lip_sup = std::max(out.lip_sup, d.max_abs() / dt);
      const double dbeta = std::pow(dt, beta);
      out.tbeta_alpha = std::max(out.tbeta_alpha, holder_norm_alpha(d, alpha) / dbeta);
      out.tbeta_2alpha = std::max(out.tbeta_2alpha, holder_norm_2alpha(d, alpha) / dbeta);
    }
  return out;
}

}  // namespace

SpacetimeNorms spacetime_norms(const SnapshotSeries& series, double alpha, double beta) {
  if (series.t.size() < 3)
    throw std::invalid_argument("spacetime_norms: needs at least 3 snapshots");
  if (series.rho.size() != series.t.size() || series.u.size() != series.t.size())
    throw std::invalid_argument("spacetime_norms: inconsistent series lengths");
  SpacetimeNorms out;
  out.alpha = alpha;
  out.beta = beta;
  const TimeSeminorms r = time_seminorms(series.t, series.rho, alpha, beta);
  const TimeSeminorms u = time_seminorms(series.t, series.u, alpha, beta);
  out.rho_lip_sup = r.lip_sup;
  out.rho_tbeta_alpha = r.tbeta_alpha;
  out.rho_tbeta_2alpha = r.tbeta_2alpha;
  out.u_lip_sup = u.lip_sup;
  out.u_tbeta_alpha = u.tbeta_alpha;
  out.u_tbeta_2alpha = u.tbeta_2alpha;
  out.rho_e1_proxy = std::max({r.lip_sup, r.tbeta_alpha, r.tbeta_2alpha});
  out.u_e1_proxy = std::max({u.lip_sup, u.tbeta_alpha, u.tbeta_2alpha});
  return out;
}

}  // namespace surfflow
