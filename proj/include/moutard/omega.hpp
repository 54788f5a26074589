#pragma once

#include "moutard/dbar.hpp"

namespace moutard {

// The six closed-form Moutard potentials used by the two scenarios.
enum class OmegaKind {
    FF_Creation,        // i [ |ln(lambda conj lambda)| + ln|E| ] - i c
    PsiF_Creation,      // 4 pi i G(z, lambda, E) + i c
    FPsiStar_Creation,  // 4 pi i sign(|lambda|^2-1) G(z, -lambda, E) + i c
    FF_Annihilation,    // (i/pi) a(lambda) + i c
    PsiF_Annihilation,  // -4 i G(z, lambda, E) / denom + i c
    FPsiStar_Annihilation // -4 i sign G(z, -lambda, E) / denom + i c
};

// Closed form plus its per-domain integration constants. Constants are stored
// as reals and always enter as purely imaginary additions, as required by the
// imaginarity of the potential.
struct OmegaClosedForm {
    OmegaKind kind;
    double c_plus = 0.0;   // |lambda| < 1
    double c_minus = 0.0;  // |lambda| > 1

    double constant_for(const SpectralParam& lam) const {
        return lam.domain() == DomainTag::DPlus ? c_plus : c_minus;
    }
};

// Constants of the creation scenario: c_ff = 4 pi / alpha, all others zero.
OmegaClosedForm creation_form(OmegaKind kind, const Coupling& alpha);
// Constants of the annihilation scenario: all zero.
OmegaClosedForm annihilation_form(OmegaKind kind);

Complex omega_closed(const OmegaClosedForm& form, const PhysicalPoint& z,
                     const SpectralParam& lam, const Energy& E, const Coupling& alpha,
                     const QuadratureConfig& cfg = {});

// Polyline in lambda-space with the potential value at its first waypoint.
struct IntegrationPath {
    std::vector<SpectralParam> waypoints;
    Complex base_value{0.0, 0.0};
};

// base_value + int over the path of (psi psi* dlambda - conj(psi psi*) dconj(lambda)).
// The two terms are conjugate-antisymmetric, so each panel contributes
// 2i Im(psi psi* dlambda). Segments must stay clear of the given bands.
Complex omega_integrate(const LambdaField& psi, const LambdaField& psi_star,
                        const IntegrationPath& path, int n_panels,
                        const std::vector<ExclusionBand>& bands = {},
                        const QuadratureConfig& cfg = {});

// Finite-difference residuals of d_lambda omega = psi psi* and
// d_conj(lambda) omega = -conj(psi psi*) over the grid.
ResidualReport check_omega_gradient(const OmegaClosedForm& form, const PhysicalPoint& z,
                                    const Energy& E, const Coupling& alpha,
                                    const LambdaField& psi, const LambdaField& psi_star,
                                    const AnnulusGrid& grid, double h_rel,
                                    const QuadratureConfig& cfg = {});

} // namespace moutard
