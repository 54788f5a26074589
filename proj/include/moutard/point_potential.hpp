#pragma once

#include <vector>

#include "moutard/green.hpp"
#include "moutard/spectral.hpp"

namespace moutard {

// Coupling constant of the two-dimensional zero-range (point) potential.
class Coupling {
public:
    explicit Coupling(double alpha) : alpha_(alpha) {
        if (alpha == 0.0)
            throw DomainError("coupling alpha must be nonzero (alpha = 0 is the vacuum)");
    }
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

// Radii in lambda-space where the spectral data has poles.
struct SingularSet {
    std::vector<double> radii;       // reciprocal pairs {r, 1/r}, or {1} at threshold
    double threshold_energy_mag;     // |E| at which the circles merge onto |lambda| = 1
    bool empty() const { return radii.empty(); }
};

// |denom| below this is classified as a singular point: 1/denom amplifies
// Green-function noise without bound near the circles.
inline constexpr double kSingTol = 1e-8;

// Log-radial denominator |ln(lambda conj lambda)| + ln|E| - 4 pi / alpha shared by
// the whole point-potential family. Computed as 2|ln|lambda|| to stay off complex
// log branches.
double denom(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// Same quantity in its scattering normalization 1 - (alpha/2pi) ln(|Re k| + |Im k|);
// equals -(alpha/4pi) * denom identically.
double denom_scattering_form(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// Scattering amplitude b(lambda): real, radial, singular on the circles.
double b_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// dbar spectral data B(lambda) = -(sign(|lambda|^2-1)/conj(lambda)) / denom.
Complex B_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// Same B through the scattering route (pi sign / conj lambda) * b(lambda);
// used to cross-check the two algebraic paths.
Complex B_point_scattering_route(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// Eigenfunction psi(z, lambda) = plane_wave - 4 pi G(z, lambda, E) / denom.
Complex psi_point(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                  const Coupling& alpha, const QuadratureConfig& cfg = {});

// Equivalent form exp(ikx) [1 + coupling/(1 - (alpha/2pi) ln(|Re k|+|Im k|)) g(x,k)].
Complex psi_point_scattering_form(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                                  const Coupling& alpha, const QuadratureConfig& cfg = {});

// Conjugate eigenfunction (i/lambda) [inverse plane wave - 4 pi G(z,-lambda,E)/denom].
Complex psi_star_point(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                       const Coupling& alpha, const QuadratureConfig& cfg = {});

// a(lambda) = -(1/pi)/denom; coincides with b and with the small-|x| log limit of psi.
double a_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha);

// Zero set of denom: {exp(s/2), exp(-s/2)} with s = 4pi/alpha - ln|E| when s > 0.
SingularSet singular_circles(const Energy& E, const Coupling& alpha);

} // namespace moutard
