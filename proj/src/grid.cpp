#include "surfflow/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "surfflow/kernels.hpp"

namespace surfflow {

Grid::Grid(int dim_, int n_, DiffScheme scheme_) : dim(dim_), n(n_), scheme(scheme_) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dim must be 1 or 2");
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid n must be even and >= 8");
}

bool ScalarField::all_finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double ScalarField::max_abs() const { return kernels::max_abs(v); }
double ScalarField::min() const { return kernels::min_val(v); }

double ScalarField::mean() const {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

ScalarField VectorField::component(int c) const {
  ScalarField out(grid);
  const double* p = comp(c);
  for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = p[i];
  return out;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  kernels::axpby(out.v, a.v, 1.0, b.v);
  return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  kernels::axpby(out.v, a.v, -1.0, b.v);
  return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  kernels::mul(out.v, a.v, b.v);
  return out;
}

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out(a.grid);
  kernels::scale(out.v, s, a.v);
  return out;
}

ScalarField& operator+=(ScalarField& a, const ScalarField& b) {
  kernels::axpby(a.v, a.v, 1.0, b.v);
  return a;
}

ScalarField& axpy(ScalarField& y, double alpha, const ScalarField& x) {
  kernels::axpby(y.v, y.v, alpha, x.v);
  return y;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out(a.grid);
  for (int c = 0; c < a.comps; ++c) {
    const double* pa = a.comp(c);
    const double* pb = b.comp(c);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] += pa[i] * pb[i];
  }
  return out;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.v[i] - b.v[i]));
  return m;
}

}  // namespace surfflow
