#pragma once

#include "moutard/quadrature.hpp"
#include "moutard/spectral.hpp"

namespace moutard {

enum class GreenMethod { DirectQuadrature, ContourShift };

struct GreenEval {
    double value = 0.0;              // G(z, lambda, E); real-valued
    GreenMethod method = GreenMethod::ContourShift;
    double est_error = 0.0;          // heuristic error estimate, monotone under refinement
    double imag_abs = 0.0;           // |Im| of the raw complex result before taking Re
};

// Faddeev Green function G(z, lambda, E) = exp(ikx) g(x, k), with g the
// regularized 2D Fourier integral of 1/(xi^2 + 2 k xi).
//
// Direct method: polar xi-coordinates. The radial half-line integral at fixed
// angle has the closed form exp(w) E1(w) (plus a residue term when the shifted
// pole is swept), leaving a 1D angular integral with isolated logarithmic
// points at the angles where xi is orthogonal to x, and a jump at the angle of
// the interior singular direction. Those angles seed the panel breakpoints.
GreenEval green_direct(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                       const QuadratureConfig& cfg = {});

// Contour-shift method: translating the xi-contour by Im k turns the integral
// into the classical resolvent kernel -(1/2pi) K0(sqrt|E| |x|) plus the
// residues of 1/(eta^2 + |E|) collected along the shift, which form a finite
// 1D integral over the strip |u| < |Re k|:
//   G = -(1/2pi) K0(sqrt|E| rho)
//       + (1/2pi) int_0^{|Re k|} cos(u x_m) exp(-p(u) x_n) / p(u) du,
// with p(u) = sqrt(u^2 + |E|) and (x_m, x_n) the coordinates of x in the frame
// of (Re k, Im k). Manifestly real; at |lambda| = 1 the correction vanishes.
GreenEval green_contour_shift(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                              const QuadratureConfig& cfg = {});

GreenEval green_eval(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                     const QuadratureConfig& cfg, GreenMethod method);

// Default high-accuracy evaluation used by the closed-form consumers.
double green_value(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                   const QuadratureConfig& cfg = {});

// |d/d(conj lambda) G - (1/4pi) (sign(|lambda|^2-1)/conj(lambda))
//   * exp(-(sqrt|E|/2)(conj(lambda) z + conj(z)/conj(lambda)))|
// with the derivative taken by a central difference of absolute step h.
// The four stencil points must stay on one side of |lambda| = 1.
double check_dbar_green(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                        double h, const QuadratureConfig& cfg = {});

// Coefficient of the logarithmic singularity of g at x = 0, estimated from the
// slope of G against ln|x| on a decreasing radius sequence. Converges to
// 1/(2pi) independently of lambda and E.
double green_log_coeff(const SpectralParam& lam, const Energy& E,
                       const QuadratureConfig& cfg = {});

// Truncation radius heuristic for the brute-force reference integrator.
double default_radial_cutoff(const Energy& E, const SpectralParam& lam, const PhysicalPoint& z);

} // namespace moutard
