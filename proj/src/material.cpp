#include "surfflow/material.hpp"

#include <cmath>
#include <limits>

#include "surfflow/errors.hpp"

namespace surfflow {

const char* to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::Exponential: return "exponential";
    case DensityKind::ShiftedQuadratic: return "shifted_quadratic";
    case DensityKind::UserPolynomial: return "user_polynomial";
  }
  return "?";
}

DensityKind density_kind_from_string(const std::string& name) {
  if (name == "exponential") return DensityKind::Exponential;
  if (name == "shifted_quadratic") return DensityKind::ShiftedQuadratic;
  if (name == "user_polynomial") return DensityKind::UserPolynomial;
  throw ConfigError("unknown density kind: " + name);
}

EnergyDensity EnergyDensity::exponential() {
  EnergyDensity d;
  d.kind_ = DensityKind::Exponential;
  return d;
}

EnergyDensity EnergyDensity::shifted_quadratic(double a0, double a2) {
  if (a0 <= 0 || a2 <= 0) throw ConfigError("shifted_quadratic needs a0 > 0 and a2 > 0");
  EnergyDensity d;
  d.kind_ = DensityKind::ShiftedQuadratic;
  d.a0_ = a0;
  d.a2_ = a2;
  return d;
}

EnergyDensity EnergyDensity::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("user_polynomial needs at least one coefficient");
  EnergyDensity d;
  d.kind_ = DensityKind::UserPolynomial;
  d.coeffs_ = std::move(coeffs);
  return d;
}

namespace {
// k-th derivative of sum a_j c^j by Horner on the shifted coefficients
double poly_deriv(const std::vector<double>& a, int k, double c) {
  double s = 0.0;
  for (std::size_t j = a.size(); j-- > std::size_t(k);) {
    double fac = 1.0;
    for (int m = 0; m < k; ++m) fac *= double(j - m);
    s = s * c + a[j] * fac;
  }
  return s;
}
}  // namespace

double EnergyDensity::G(double c) const {
  switch (kind_) {
    case DensityKind::Exponential: return std::exp(-c);
    case DensityKind::ShiftedQuadratic: return a0_ + a2_ * c * c;
    case DensityKind::UserPolynomial: return poly_deriv(coeffs_, 0, c);
  }
  return 0;
}

double EnergyDensity::G1(double c) const {
  switch (kind_) {
    case DensityKind::Exponential: return -std::exp(-c);
    case DensityKind::ShiftedQuadratic: return 2.0 * a2_ * c;
    case DensityKind::UserPolynomial: return poly_deriv(coeffs_, 1, c);
  }
  return 0;
}

double EnergyDensity::G2(double c) const {
  switch (kind_) {
    case DensityKind::Exponential: return std::exp(-c);
    case DensityKind::ShiftedQuadratic: return 2.0 * a2_;
    case DensityKind::UserPolynomial: return poly_deriv(coeffs_, 2, c);
  }
  return 0;
}

double EnergyDensity::G3(double c) const {
  switch (kind_) {
    case DensityKind::Exponential: return -std::exp(-c);
    case DensityKind::ShiftedQuadratic: return 0.0;
    case DensityKind::UserPolynomial: return poly_deriv(coeffs_, 3, c);
  }
  return 0;
}

namespace {
template <class F>
ScalarField map_field(const ScalarField& u, F f) {
  ScalarField out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) out.v[i] = f(u.v[i]);
  return out;
}
}  // namespace

ScalarField EnergyDensity::map_G(const ScalarField& u) const {
  return map_field(u, [this](double c) { return G(c); });
}
ScalarField EnergyDensity::map_G1(const ScalarField& u) const {
  return map_field(u, [this](double c) { return G1(c); });
}
ScalarField EnergyDensity::map_G2(const ScalarField& u) const {
  return map_field(u, [this](double c) { return G2(c); });
}
ScalarField EnergyDensity::map_G3(const ScalarField& u) const {
  return map_field(u, [this](double c) { return G3(c); });
}
ScalarField EnergyDensity::map_g(const ScalarField& u) const {
  return map_field(u, [this](double c) { return g(c); });
}

void EnergyDensity::require_in_range(const ScalarField& u) const {
  if (!certified_range) return;
  for (double c : u.v) {
    if (!std::isfinite(c) || c < certified_range->first || c > certified_range->second)
      throw RangeViolation("concentration left the certified interval [" +
                           std::to_string(certified_range->first) + ", " +
                           std::to_string(certified_range->second) + "]");
  }
}

AdmissibilityReport check_admissible(const EnergyDensity& G, double lo, double hi) {
  AdmissibilityReport rep;
  if (lo > hi) {
    rep.vacuous = true;
    rep.admissible = true;
    rep.min_gpp = std::numeric_limits<double>::infinity();
    rep.min_g = std::numeric_limits<double>::infinity();
    return rep;
  }
  const int samples = 10000;
  rep.min_gpp = std::numeric_limits<double>::infinity();
  rep.min_g = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double c = lo + (hi - lo) * double(i) / double(samples - 1);
    rep.min_gpp = std::min(rep.min_gpp, G.G2(c));
    rep.min_g = std::min(rep.min_g, G.g(c));
  }
  rep.admissible = rep.min_gpp > 0.0 && rep.min_g > 0.0;
  return rep;
}

}  // namespace surfflow
