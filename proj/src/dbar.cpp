#include "moutard/dbar.hpp"

#include <algorithm>
#include <cmath>

namespace moutard {

std::vector<double> AnnulusGrid::radii() const {
    std::vector<double> out;
    const double l0 = std::log(r_min), l1 = std::log(r_max);
    for (int i = 0; i < n_radial; ++i) {
        const double t = n_radial == 1 ? 0.5 : static_cast<double>(i) / (n_radial - 1);
        const double r = std::exp(l0 + (l1 - l0) * t);
        if (!excluded(r))
            out.push_back(r);
    }
    return out;
}

std::vector<double> AnnulusGrid::angles() const {
    std::vector<double> out;
    out.reserve(n_angular);
    for (int j = 0; j < n_angular; ++j)
        out.push_back(2.0 * 3.14159265358979323846 * j / n_angular);
    return out;
}

std::vector<SpectralParam> AnnulusGrid::points() const {
    std::vector<SpectralParam> out;
    const auto rs = radii();
    const auto ths = angles();
    out.reserve(rs.size() * ths.size());
    for (double r : rs)
        for (double th : ths)
            out.emplace_back(Complex(r * std::cos(th), r * std::sin(th)));
    return out;
}

bool AnnulusGrid::segment_clear(Complex a, Complex b) const {
    // Radius range swept by the segment: [distance from origin, max endpoint radius].
    const double ra = std::abs(a), rb = std::abs(b);
    double rlo = std::min(ra, rb);
    const double rhi = std::max(ra, rb);
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 > 0.0) {
        const double t = -((a.real() * d.real()) + (a.imag() * d.imag())) / len2;
        if (t > 0.0 && t < 1.0)
            rlo = std::min(rlo, std::abs(a + t * d));
    }
    for (const auto& band : exclusions) {
        if (rhi >= band.center_radius - band.half_width &&
            rlo <= band.center_radius + band.half_width)
            return false;
    }
    if (rlo < 1.0 && rhi > 1.0) // crossing between components
        return false;
    return true;
}

namespace {

ExclusionBand band_at(double radius) {
    // half-width = max(10 h_fd r, 1e-2 r): keeps 1/denom amplification bounded
    // in residual statistics.
    const double hw = std::max(10.0 * kDefaultFdStep, 1e-2) * radius;
    return ExclusionBand{radius, hw};
}

} // namespace

AnnulusGrid build_grid(double r_min, double r_max, int n_radial, int n_angular,
                       const Energy& E, const Coupling& alpha) {
    AnnulusGrid g = build_grid_vacuum(r_min, r_max, n_radial, n_angular);
    for (double r : singular_circles(E, alpha).radii)
        g.exclusions.push_back(band_at(r));
    if (g.radii().empty())
        throw ConfigError("exclusion bands cover the whole radial grid");
    return g;
}

AnnulusGrid build_grid_vacuum(double r_min, double r_max, int n_radial, int n_angular) {
    if (!(r_min > 0.0) || !(r_min < 1.0) || !(r_max > 1.0) || n_radial < 1 || n_angular < 1)
        throw ConfigError("annulus grid requires 0 < r_min < 1 < r_max and positive counts");
    AnnulusGrid g;
    g.r_min = r_min;
    g.r_max = r_max;
    g.n_radial = n_radial;
    g.n_angular = n_angular;
    g.exclusions = {band_at(1.0)};
    if (g.radii().empty())
        throw ConfigError("exclusion bands cover the whole radial grid");
    return g;
}

void ResidualReport::add(Complex lam, double r, bool keep_per_point) {
    max_abs = std::max(max_abs, r);
    rms += r * r;
    ++n_points;
    if (keep_per_point) {
        if (!per_point) per_point.emplace();
        per_point->emplace_back(lam, r);
    }
}

void ResidualReport::finish() {
    if (n_points > 0)
        rms = std::sqrt(rms / static_cast<double>(n_points));
}

Complex dbar_fd(const LambdaField& field, const SpectralParam& lam, double h) {
    const Complex l = lam.lambda();
    const Complex d_re = (field(l + h) - field(l - h)) / (2.0 * h);
    const Complex d_im = (field(l + Complex(0.0, h)) - field(l - Complex(0.0, h))) / (2.0 * h);
    return 0.5 * (d_re + Complex(0.0, 1.0) * d_im);
}

Complex d_fd(const LambdaField& field, const SpectralParam& lam, double h) {
    const Complex l = lam.lambda();
    const Complex d_re = (field(l + h) - field(l - h)) / (2.0 * h);
    const Complex d_im = (field(l + Complex(0.0, h)) - field(l - Complex(0.0, h))) / (2.0 * h);
    return 0.5 * (d_re - Complex(0.0, 1.0) * d_im);
}

bool stencil_ok(const SpectralParam& lam, double h, const AnnulusGrid& grid) {
    const Complex l = lam.lambda();
    const double side = std::abs(l) - 1.0;
    for (const Complex& p : {l + h, l - h, l + Complex(0.0, h), l - Complex(0.0, h)}) {
        const double r = std::abs(p);
        if (grid.excluded(r)) return false;
        if ((r - 1.0) * side <= 0.0) return false;
    }
    return !grid.excluded(std::abs(l));
}

Complex dbar_fd(const LambdaField& field, const SpectralParam& lam, double h,
                const AnnulusGrid& grid) {
    if (!stencil_ok(lam, h, grid))
        throw StencilError("finite-difference stencil hits an exclusion band");
    return dbar_fd(field, lam, h);
}

std::pair<ResidualReport, ResidualReport>
check_dbar_pair(const LambdaField& psi, const LambdaField& psi_star, const LambdaField& B,
                const AnnulusGrid& grid, double h_rel) {
    ResidualReport r_psi, r_star;
    r_psi.h = h_rel;
    r_star.h = h_rel;
    for (const SpectralParam& lam : grid.points()) {
        const double h = h_rel * lam.abs();
        if (!stencil_ok(lam, h, grid)) {
            ++r_psi.n_skipped;
            ++r_star.n_skipped;
            continue;
        }
        const Complex Bv = B(lam);
        const double res1 = std::abs(dbar_fd(psi, lam, h) - Bv * std::conj(psi(lam)));
        const double res2 =
            std::abs(dbar_fd(psi_star, lam, h) + std::conj(Bv) * std::conj(psi_star(lam)));
        r_psi.add(lam.lambda(), res1);
        r_star.add(lam.lambda(), res2);
    }
    r_psi.finish();
    r_star.finish();
    return {r_psi, r_star};
}

ResidualReport check_symmetries_B(const LambdaField& B, const AnnulusGrid& grid) {
    ResidualReport rep;
    for (const SpectralParam& lam : grid.points()) {
        const Complex l = lam.lambda();
        const Complex Bv = B(lam);
        const auto [inv, neg_inv] = involutions(lam);
        rep.add(l, std::abs(B(inv) + l * l * std::conj(Bv)));
        rep.add(l, std::abs(B(neg_inv) - std::norm(l) * Bv));
    }
    rep.finish();
    return rep;
}

ResidualReport check_symmetries_b(const LambdaField& b, const AnnulusGrid& grid) {
    ResidualReport rep;
    for (const SpectralParam& lam : grid.points()) {
        const Complex l = lam.lambda();
        const Complex bv = b(lam);
        const auto [inv, neg_inv] = involutions(lam);
        rep.add(l, std::abs(b(inv) - std::conj(bv)));
        rep.add(l, std::abs(b(neg_inv) - bv));
        rep.add(l, std::abs(bv - b(Complex(lam.abs(), 0.0))));
        rep.add(l, std::abs(bv.imag()));
    }
    rep.finish();
    return rep;
}

} // namespace moutard
