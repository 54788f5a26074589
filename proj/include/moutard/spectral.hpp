#pragma once

#include <complex>
#include <utility>

#include "moutard/errors.hpp"

namespace moutard {

using Complex = std::complex<double>;

// Fixed negative energy of the two-dimensional Schroedinger operator.
class Energy {
public:
    explicit Energy(double value) : value_(value) {
        if (!(value < 0.0))
            throw DomainError("Energy must be strictly negative, got " + std::to_string(value));
    }
    double value() const { return value_; }
    double abs() const { return -value_; }
    double sqrt_abs() const { return std::sqrt(-value_); }

private:
    double value_;
};

enum class DomainTag { DPlus, DMinus, Boundary };

// Relative tolerance for classifying |lambda| = 1. The sign factor sign(|lambda|^2 - 1)
// is discontinuous on the circle, so classification must be deterministic.
inline constexpr double kBoundaryTol = 1e-12;

// Point lambda on the spectral variety chart C \ {0}, tagged by its position
// relative to the unit circle.
class SpectralParam {
public:
    explicit SpectralParam(Complex lambda) : lambda_(lambda) {
        const double r = std::abs(lambda);
        if (r == 0.0)
            throw DomainError("spectral parameter lambda must be nonzero");
        if (std::abs(r - 1.0) <= kBoundaryTol)
            domain_ = DomainTag::Boundary;
        else
            domain_ = r < 1.0 ? DomainTag::DPlus : DomainTag::DMinus;
    }

    Complex lambda() const { return lambda_; }
    DomainTag domain() const { return domain_; }
    double abs() const { return std::abs(lambda_); }
    double arg() const { return std::arg(lambda_); }

    // sign(lambda conj(lambda) - 1); undefined on the unit circle.
    double sign_factor() const {
        switch (domain_) {
        case DomainTag::DPlus: return -1.0;
        case DomainTag::DMinus: return +1.0;
        default:
            throw BoundaryError("sign(|lambda|^2 - 1) undefined on |lambda| = 1");
        }
    }

private:
    Complex lambda_;
    DomainTag domain_;
};

// Point k = (k1, k2) in C^2 with k1^2 + k2^2 = E.
struct KVector {
    Complex k1;
    Complex k2;
};

// Physical-plane point, stored as z = x1 + i x2.
struct PhysicalPoint {
    Complex z;

    PhysicalPoint(double x1, double x2) : z(x1, x2) {}
    explicit PhysicalPoint(Complex zz) : z(zz) {}
    double x1() const { return z.real(); }
    double x2() const { return z.imag(); }
    double abs() const { return std::abs(z); }
};

// k_E(lambda) = ( (lambda + 1/lambda) i sqrt|E| / 2, (lambda - 1/lambda) sqrt|E| / 2 ).
KVector k_from_lambda(const Energy& E, const SpectralParam& lam);

// |Re k| + |Im k| with Euclidean norms of the real/imaginary parts of (k1, k2).
// Equals sqrt|E| * max(|lambda|, 1/|lambda|).
double re_im_norm(const KVector& k);

// Symmetry partners (1/conj(lambda), -1/conj(lambda)) of the lambda-plane involutions.
std::pair<SpectralParam, SpectralParam> involutions(const SpectralParam& lam);

// exp(i k x) written in complex coordinates:
// exp[-(sqrt|E|/2) (lambda conj(z) + z / lambda)].
Complex plane_wave(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E);

// Same exponential with the opposite sign, i.e. plane_wave at -lambda.
Complex plane_wave_inverse(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E);

} // namespace moutard
