#include "moutard/spectral.hpp"

#include <cmath>

namespace moutard {

KVector k_from_lambda(const Energy& E, const SpectralParam& lam) {
    const Complex l = lam.lambda();
    const Complex inv = 1.0 / l;
    const double half_root = 0.5 * E.sqrt_abs();
    return KVector{Complex(0.0, half_root) * (l + inv), half_root * (l - inv)};
}

double re_im_norm(const KVector& k) {
    const double re = std::hypot(k.k1.real(), k.k2.real());
    const double im = std::hypot(k.k1.imag(), k.k2.imag());
    return re + im;
}

std::pair<SpectralParam, SpectralParam> involutions(const SpectralParam& lam) {
    const Complex p = 1.0 / std::conj(lam.lambda());
    return {SpectralParam(p), SpectralParam(-p)};
}

Complex plane_wave(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E) {
    const Complex l = lam.lambda();
    const Complex expo = -0.5 * E.sqrt_abs() * (l * std::conj(z.z) + z.z / l);
    return std::exp(expo);
}

Complex plane_wave_inverse(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E) {
    const Complex l = lam.lambda();
    const Complex expo = 0.5 * E.sqrt_abs() * (l * std::conj(z.z) + z.z / l);
    return std::exp(expo);
}

} // namespace moutard
