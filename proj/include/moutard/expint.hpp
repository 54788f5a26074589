#pragma once

#include <complex>

namespace moutard {

// Scaled exponential integral exp(w) * E1(w) on the principal branch (cut along
// the negative real axis; the side of the cut is taken from the sign of Im w,
// including signed zero). Accurate to ~1e-12 relative over the ranges used by
// the Green-function quadrature.
std::complex<double> e1_scaled(std::complex<double> w);

// Oscillatory half-line integral  int_0^inf exp(i beta u) / (u + c) du  for
// beta != 0 and c off the negative real axis. Reduces to e1_scaled plus a
// residue term when the pole at u = -c lies in the quadrant swept by the
// contour rotation.
std::complex<double> half_line_oscillatory(double beta, std::complex<double> c);

} // namespace moutard
