#pragma once

#include "surfflow/grid.hpp"

namespace surfflow {

// Partial derivative along `axis` (0-based). Fourier collocation: exact for
// band-limited periodic data up to rounding; the Nyquist mode's derivative
// coefficient is zero, so the operator is real and antisymmetric.
ScalarField diff(const ScalarField& f, int axis);

// Same-axis second derivative. Spectral multiplier -k^2 with the Nyquist
// mode zeroed, i.e. diff2 == diff(diff(.)) exactly.
ScalarField diff2(const ScalarField& f, int axis);

// Mixed/second partial: diff2 on the diagonal, composed first derivatives off it.
ScalarField diff_ij(const ScalarField& f, int i, int j);

// Trapezoidal rule on the periodic grid: sum f*weight*h^dim (spectrally
// accurate for smooth periodic integrands).
double integrate(const ScalarField& f, const ScalarField& weight);
double integrate(const ScalarField& f);

// Discrete C^1 norm: max(|f|, |d1 f|, ..., |dd f|) over the grid.
double c1_norm(const ScalarField& f);

}  // namespace surfflow
