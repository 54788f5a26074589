#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moutard/point_potential.hpp"
#include "moutard/spectral.hpp"

namespace moutard {

// A field over lambda-space at fixed physical parameters.
struct LambdaField {
    std::function<Complex(const SpectralParam&)> eval;
    std::string label;

    Complex operator()(const SpectralParam& lam) const { return eval(lam); }
    Complex operator()(Complex lam) const { return eval(SpectralParam(lam)); }
};

// Radial band |.|-distance exclusion around a circle of the given radius.
struct ExclusionBand {
    double center_radius;
    double half_width;
    bool contains(double r) const {
        return r >= center_radius - half_width && r <= center_radius + half_width;
    }
};

// Default relative finite-difference step: lambda spans decades on log grids.
inline constexpr double kDefaultFdStep = 1e-3;

// Log-radial x uniform-angular sampling of the annulus r_min <= |lambda| <= r_max
// with exclusion bands around |lambda| = 1 and the singular circles.
struct AnnulusGrid {
    double r_min = 0.1;
    double r_max = 10.0;
    int n_radial = 40;
    int n_angular = 32;
    std::vector<ExclusionBand> exclusions;

    bool excluded(double r) const {
        for (const auto& band : exclusions)
            if (band.contains(r)) return true;
        return false;
    }
    // Grid radii surviving the exclusion bands.
    std::vector<double> radii() const;
    std::vector<double> angles() const;
    // All surviving grid points.
    std::vector<SpectralParam> points() const;
    // True if every point of the segment [a, b] stays clear of the bands and
    // of the unit circle component boundary.
    bool segment_clear(Complex a, Complex b) const;
};

AnnulusGrid build_grid(double r_min, double r_max, int n_radial, int n_angular,
                       const Energy& E, const Coupling& alpha);
// Grid with only the |lambda| = 1 band (vacuum case).
AnnulusGrid build_grid_vacuum(double r_min, double r_max, int n_radial, int n_angular);

struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    long n_points = 0;
    long n_skipped = 0;
    double h = 0.0;
    std::optional<std::vector<std::pair<Complex, double>>> per_point;

    void add(Complex lam, double r, bool keep_per_point = false);
    void finish();
};

// Central second-order approximation of d/d(conj lambda) with absolute step h:
//   (1/2) [ (f(l+h) - f(l-h)) / (2h) + i (f(l+ih) - f(l-ih)) / (2h) ].
Complex dbar_fd(const LambdaField& field, const SpectralParam& lam, double h);

// Same derivative, with the stencil validated against the grid bands.
// Throws StencilError if a stencil point is excluded or crosses |lambda| = 1.
Complex dbar_fd(const LambdaField& field, const SpectralParam& lam, double h,
                const AnnulusGrid& grid);

// d/d(lambda) by the conjugate stencil (1/2)[d_Re - i d_Im].
Complex d_fd(const LambdaField& field, const SpectralParam& lam, double h);

// Residuals of the conjugate pair
//   dbar psi = B conj(psi),   dbar psi* = -conj(B) conj(psi*)
// over the grid, with relative step h_rel (absolute step h_rel |lambda|).
// Stencil failures are skipped and counted.
std::pair<ResidualReport, ResidualReport>
check_dbar_pair(const LambdaField& psi, const LambdaField& psi_star, const LambdaField& B,
                const AnnulusGrid& grid, double h_rel);

// max/rms of |B(1/conj l) + l^2 conj(B(l))| and |B(-1/conj l) - |l|^2 B(l)|.
ResidualReport check_symmetries_B(const LambdaField& B, const AnnulusGrid& grid);

// Residuals of b(1/conj l) = conj(b(l)), b(-1/conj l) = b(l), b(l) = b(|l|)
// and Im b = 0 (radial real case).
ResidualReport check_symmetries_b(const LambdaField& b, const AnnulusGrid& grid);

// Helper: stencil validity without evaluating.
bool stencil_ok(const SpectralParam& lam, double h, const AnnulusGrid& grid);

} // namespace moutard
