#pragma once

#include <stdexcept>
#include <string>

namespace surfflow {

// Height-function parameterization left its admissible regime: the normal
// turned past perpendicular (nu_rho . nu_Sigma <= 0) or det g <= 0.
class GeometryBreakdown : public std::runtime_error {
 public:
  explicit GeometryBreakdown(const std::string& what) : std::runtime_error(what) {}
};

// Concentration left the interval on which the energy density is certified
// parabolic (G'' > 0 and g > 0).
class RangeViolation : public std::runtime_error {
 public:
  explicit RangeViolation(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-point iteration of the splitting scheme hit max_iter while still
// expanding (empirical contraction factor >= 1).
class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Configuration parse/validation failure.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace surfflow
