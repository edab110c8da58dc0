#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surfflow/grid.hpp"

namespace surfflow {

enum class DensityKind { Exponential, ShiftedQuadratic, UserPolynomial };

const char* to_string(DensityKind kind);
DensityKind density_kind_from_string(const std::string& name);

struct AdmissibilityReport {
  bool admissible = false;
  bool vacuous = false;  // empty interval
  double min_gpp = 0.0;  // min G'' over the sample
  double min_g = 0.0;    // min g = G - G' Id over the sample
};

// Gibbs energy density G with derivatives up to G''' and the scaling
// function g = G - G' * Id.  Parabolicity needs G'' > 0 and g > 0 on the
// realized concentration range.
class EnergyDensity {
 public:
  static EnergyDensity exponential();                       // G(c) = exp(-c)
  static EnergyDensity shifted_quadratic(double a0, double a2);  // G = a0 + a2 c^2
  static EnergyDensity polynomial(std::vector<double> coeffs);   // G = sum a_k c^k

  DensityKind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double G(double c) const;
  double G1(double c) const;  // G'
  double G2(double c) const;  // G''
  double G3(double c) const;  // G'''
  double g(double c) const { return G(c) - G1(c) * c; }
  double g1(double c) const { return -G2(c) * c; }  // g' = -G'' Id

  ScalarField map_G(const ScalarField& u) const;
  ScalarField map_G1(const ScalarField& u) const;
  ScalarField map_G2(const ScalarField& u) const;
  ScalarField map_G3(const ScalarField& u) const;
  ScalarField map_g(const ScalarField& u) const;

  // Interval on which this run certifies parabolicity; when set, the solver
  // aborts with RangeViolation once the concentration leaves it.
  std::optional<std::pair<double, double>> certified_range;
  void require_in_range(const ScalarField& u) const;

 private:
  DensityKind kind_ = DensityKind::Exponential;
  double a0_ = 1.0, a2_ = 1.0;
  std::vector<double> coeffs_;
};

// Samples G'' and g on 10^4 points of [lo,hi]; admissible iff both stay > 0.
// lo > hi is the empty interval and reports vacuously admissible.
AdmissibilityReport check_admissible(const EnergyDensity& G, double lo, double hi);

}  // namespace surfflow
