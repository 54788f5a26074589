#pragma once

#include "moutard/omega.hpp"

namespace moutard {

// Seed pair (f, f*) solving the conjugate equations for B, together with its
// Moutard potential omega_{f,f*} and the per-domain integration constants.
struct MoutardSeed {
    LambdaField B;
    LambdaField f;
    LambdaField f_star;
    std::function<Complex(const SpectralParam&)> omega_ff;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

// |omega_ff| threshold relative to |f conj(f*)| below which the transform
// denominators are rejected.
inline constexpr double kOmegaZeroTol = 1e-10;

// Vacuum seed: B = 0, f = 1, f* = i sign(|l|^2-1)/l, omega_ff with c = 4pi/alpha.
// A nonempty c_ff replaces the theorem constant (used to stage failing runs).
MoutardSeed vacuum_seed(const Energy& E, const Coupling& alpha,
                        std::optional<double> c_ff = {});

// Point-potential seed: B, f = a, f* = (i sign/l) a, omega_ff = (i/pi) a, zero constants.
MoutardSeed point_seed(const Energy& E, const Coupling& alpha,
                       std::optional<double> c_ff = {});

// B + f conj(f*) / omega_ff.
Complex moutard_B(const MoutardSeed& seed, const SpectralParam& lam);

// psi - (omega_{psi,f*} / omega_{f,f*}) f.
Complex moutard_psi(const MoutardSeed& seed, const LambdaField& psi,
                    const std::function<Complex(const SpectralParam&)>& omega_psi_fstar,
                    const SpectralParam& lam);

// psi* - (omega_{f,psi*} / omega_{f,f*}) f*.
Complex moutard_psi_star(const MoutardSeed& seed, const LambdaField& psi_star,
                         const std::function<Complex(const SpectralParam&)>& omega_f_psistar,
                         const SpectralParam& lam);

enum class OmegaMode { ClosedForm, PathIntegrated };

struct ScenarioResult {
    ResidualReport residual_B;
    ResidualReport residual_psi;
    ResidualReport residual_psi_star;
    ResidualReport residual_transformed_dbar;
    AnnulusGrid grid;
    double energy = 0.0;
    double alpha = 0.0;
    std::vector<Complex> z_samples;
    double b_scale = 0.0;        // max |B| reference over the grid
    double green_err_max = 0.0;  // largest Green est_error among shared evaluations
};

// Transform the vacuum into the point potential and compare against the
// closed forms of the point-potential family.
ScenarioResult run_creation(const Energy& E, const Coupling& alpha, const AnnulusGrid& grid,
                            const std::vector<PhysicalPoint>& z_samples, double h_rel,
                            const QuadratureConfig& cfg = {},
                            OmegaMode mode = OmegaMode::ClosedForm,
                            std::optional<double> c_ff_override = {});

// Transform the point potential back to the vacuum: B -> 0, psi -> plane wave,
// psi* -> (i/lambda) inverse plane wave.
ScenarioResult run_annihilation(const Energy& E, const Coupling& alpha, const AnnulusGrid& grid,
                                const std::vector<PhysicalPoint>& z_samples, double h_rel,
                                const QuadratureConfig& cfg = {},
                                OmegaMode mode = OmegaMode::ClosedForm,
                                std::optional<double> c_ff_override = {});

// Aggregated residuals of the seed's defining equations (conjugate pair for
// (f, f*) with B, and the omega_ff gradient relations), normalized pointwise
// by 1 + |f f*|. Throws SeedInvalid beyond threshold.
ResidualReport verify_seed(const MoutardSeed& seed, const AnnulusGrid& grid, double h_rel);

// Threshold applied by verify_seed to the normalized max residual.
double seed_tolerance(const AnnulusGrid& grid, double h_rel);

} // namespace moutard
