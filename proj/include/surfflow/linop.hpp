#pragma once

#include <memory>

#include "surfflow/geometry.hpp"
#include "surfflow/material.hpp"

namespace surfflow {

// Dense collocation matrix on the n^d grid, row-major.  Used for the frozen
// linear parts of the splitting scheme; applied with the parallel gemv
// kernel and factorized once per linearization point.
class DenseOperator {
 public:
  explicit DenseOperator(const Grid& grid);

  // += sum_ij diag(coeff_ij) D_i D_j  (coeff symmetric storage)
  void add_second_order(const std::array<ScalarField, 3>& coeff);
  // += diag(coeff) D_axis
  void add_first_order(int axis, const ScalarField& coeff);
  // += diag(coeff)
  void add_diagonal(const ScalarField& coeff);

  ScalarField apply(const ScalarField& x) const;

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& data() const { return a_; }

 private:
  Grid grid_;
  std::vector<double> a_;
};

// A^h at a frozen pair (u*, rho*):  rho |-> g(u*) a(rho*) P(rho*)[rho].
DenseOperator height_operator(const ReferenceSurface& surface, const EnergyDensity& G,
                              const ScalarField& rho_star, const ScalarField& u_star);

// A^c at a frozen pair (u*, rho*):
//   u |-> G''(u*) Delta_{rho*} u
//        + g(u*) a(rho*) H(rho*) nu_Sigma . grad_{rho*} u + g(u*) H(rho*)^2 u.
// At rho* = 0 the gradient term vanishes (the surface gradient is tangent).
// principal_only drops the two lower-order terms from the implicit part,
// treating them explicitly inside the fixed point instead.
DenseOperator concentration_operator(const ReferenceSurface& surface, const EnergyDensity& G,
                                     const ScalarField& rho_star, const ScalarField& u_star,
                                     bool principal_only = false);

// LU factorization of (I - dt A); the linear solve of each fixed-point sweep.
class ImplicitSolver {
 public:
  ImplicitSolver(const DenseOperator& op, double dt);
  ~ImplicitSolver();
  ImplicitSolver(ImplicitSolver&&) noexcept;
  ImplicitSolver& operator=(ImplicitSolver&&) noexcept;

  ScalarField solve(const ScalarField& rhs) const;

 private:
  struct Impl;
  Grid grid_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace surfflow
