#include "moutard/point_potential.hpp"

#include <cmath>

namespace moutard {

namespace {

constexpr double kPi = 3.14159265358979323846;

double denom_checked(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    const double d = denom(lam, E, alpha);
    if (std::abs(d) < kSingTol)
        throw SingularPoint("lambda lies on a singular circle of the spectral data");
    return d;
}

} // namespace

double denom(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    return 2.0 * std::abs(std::log(lam.abs())) + std::log(E.abs()) - 4.0 * kPi / alpha.alpha();
}

double denom_scattering_form(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    const double norm = re_im_norm(k_from_lambda(E, lam));
    return 1.0 - alpha.alpha() / (2.0 * kPi) * std::log(norm);
}

double b_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    const double d = denom_scattering_form(lam, E, alpha);
    if (std::abs(d) < kSingTol * std::abs(alpha.alpha()) / (4.0 * kPi))
        throw SingularPoint("lambda lies on a singular circle of the spectral data");
    return alpha.alpha() / (4.0 * kPi * kPi * d);
}

Complex B_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    const double sign = lam.sign_factor();
    const double d = denom_checked(lam, E, alpha);
    return -sign / (std::conj(lam.lambda()) * d);
}

Complex B_point_scattering_route(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    const double sign = lam.sign_factor();
    return kPi * sign / std::conj(lam.lambda()) * b_point(lam, E, alpha);
}

Complex psi_point(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                  const Coupling& alpha, const QuadratureConfig& cfg) {
    const double d = denom_checked(lam, E, alpha);
    const double G = green_value(z, lam, E, cfg);
    return plane_wave(z, lam, E) - 4.0 * kPi * G / d;
}

Complex psi_point_scattering_form(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                                  const Coupling& alpha, const QuadratureConfig& cfg) {
    const double d = denom_scattering_form(lam, E, alpha);
    if (std::abs(d) < kSingTol * std::abs(alpha.alpha()) / (4.0 * kPi))
        throw SingularPoint("lambda lies on a singular circle of the spectral data");
    const Complex pw = plane_wave(z, lam, E);
    const double G = green_value(z, lam, E, cfg);
    const Complex g = G / pw;
    return pw * (1.0 + alpha.alpha() / d * g);
}

Complex psi_star_point(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                       const Coupling& alpha, const QuadratureConfig& cfg) {
    const double d = denom_checked(lam, E, alpha);
    const SpectralParam neg(-lam.lambda());
    const double G = green_value(z, neg, E, cfg);
    return Complex(0.0, 1.0) / lam.lambda() * (plane_wave_inverse(z, lam, E) - 4.0 * kPi * G / d);
}

double a_point(const SpectralParam& lam, const Energy& E, const Coupling& alpha) {
    return -1.0 / (kPi * denom_checked(lam, E, alpha));
}

SingularSet singular_circles(const Energy& E, const Coupling& alpha) {
    SingularSet out;
    out.threshold_energy_mag = std::exp(4.0 * kPi / alpha.alpha());
    const double s = 4.0 * kPi / alpha.alpha() - std::log(E.abs());
    if (s > 0.0) {
        out.radii = {std::exp(-0.5 * s), std::exp(0.5 * s)};
    } else if (s == 0.0) {
        out.radii = {1.0};
    }
    return out;
}

} // namespace moutard
