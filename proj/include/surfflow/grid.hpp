#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace surfflow {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class DiffScheme {
  Spectral,    // Fourier collocation, Nyquist derivative zeroed
  CenteredFD2  // 2nd-order centered differences (robustness comparison mode)
};

// Uniform periodic grid on [0,2pi)^dim, same point count per dimension.
struct Grid {
  int dim = 1;          // 1: closed curve chart, 2: torus-type chart
  int n = 0;            // points per dimension, even, >= 8
  DiffScheme scheme = DiffScheme::Spectral;

  Grid() = default;
  Grid(int dim_, int n_, DiffScheme scheme_ = DiffScheme::Spectral);

  double spacing() const { return kTwoPi / n; }
  std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * n; }
  // Row-major: index = i*n + j, x1 = i*h (axis 0), x2 = j*h (axis 1).
  std::size_t index(int i, int j = 0) const {
    return dim == 1 ? std::size_t(i) : std::size_t(i) * n + j;
  }
  double coord(int i) const { return i * spacing(); }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && scheme == o.scheme;
  }
};

// Grid-sampled real-valued function on the parameter domain.
struct ScalarField {
  Grid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }

  bool all_finite() const;
  double max_abs() const;
  double min() const;
  double mean() const;
};

// Grid-sampled R^{dim+1}-valued function, one contiguous plane per component.
struct VectorField {
  Grid grid;
  int comps = 0;
  std::vector<double> data;

  VectorField() = default;
  VectorField(const Grid& g, int comps_) : grid(g), comps(comps_), data(g.size() * comps_, 0.0) {}

  double* comp(int c) { return data.data() + std::size_t(c) * grid.size(); }
  const double* comp(int c) const { return data.data() + std::size_t(c) * grid.size(); }
  double& at(int c, std::size_t i) { return data[std::size_t(c) * grid.size() + i]; }
  double at(int c, std::size_t i) const { return data[std::size_t(c) * grid.size() + i]; }

  ScalarField component(int c) const;
};

// Pointwise field algebra (parallel kernels underneath).
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField& operator+=(ScalarField& a, const ScalarField& b);
ScalarField& axpy(ScalarField& y, double alpha, const ScalarField& x);  // y += alpha*x

// Pointwise dot product of two vector fields.
ScalarField dot(const VectorField& a, const VectorField& b);

double max_abs_diff(const ScalarField& a, const ScalarField& b);

}  // namespace surfflow
