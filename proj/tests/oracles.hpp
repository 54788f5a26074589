#pragma once

// Independent reference evaluators used only by tests. They share no code with
// the production integration paths.

#include <complex>
#include <functional>

#include "moutard/green.hpp"
#include "moutard/spectral.hpp"

namespace moutard::oracle {

// Brute-force evaluation of the 2D Fourier integral for g(x,k) on a polar grid
// centered at -Re k (the symmetry center of the integrand), truncated at the
// configured radial cutoff with the coarse tail bound folded into est_error.
// Accuracy is a few 1e-4 relative at the default resolution.
GreenEval green_truncated_grid(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                               double radial_cutoff, int n_radial = 4000, int n_angular = 720);

// Adaptive evaluation of int_0^inf exp(i beta u)/(u + c) du by direct
// integration over [0, U] plus a rotated exponential tail.
std::complex<double> half_line_brute(double beta, std::complex<double> c);

// Five-point discrete Laplacian residual |(Delta + E) f| at z with step h.
double laplacian_residual(const std::function<std::complex<double>(std::complex<double>)>& f,
                          std::complex<double> z, double E, double h);

} // namespace moutard::oracle
