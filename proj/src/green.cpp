#include "moutard/green.hpp"

#include <algorithm>
#include <cmath>

#include "moutard/errors.hpp"
#include "moutard/expint.hpp"

namespace moutard {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Frame {
    double rho;      // |z|
    double x_n;      // component of x along Im k
    double x_m;      // component of x along the orthogonal axis
    double kappa;    // |Im k| = sqrt|E| (s + 1/s) / 2
    double r0;       // |Re k| = sqrt|E| |s - 1/s| / 2
};

Frame make_frame(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E) {
    const double s = lam.abs();
    const double root = E.sqrt_abs();
    const Complex w = z.z * std::exp(Complex(0.0, -lam.arg()));
    Frame f;
    f.rho = z.abs();
    f.x_n = w.real();
    f.x_m = w.imag();
    f.kappa = 0.5 * root * (s + 1.0 / s);
    f.r0 = 0.5 * root * std::abs(s - 1.0 / s);
    return f;
}

void require_in_range(const Frame& f) {
    if (f.kappa * f.rho > 690.0)
        throw DomainError("Green function out of double dynamic range (|Im k| |z| too large)");
}

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

} // namespace

GreenEval green_direct(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                       const QuadratureConfig& cfg) {
    if (z.abs() == 0.0)
        throw DomainError("Green function has a logarithmic singularity at z = 0");
    const Frame frame = make_frame(z, lam, E);
    require_in_range(frame);

    const KVector k = k_from_lambda(E, lam);
    const double x1 = z.x1(), x2 = z.x2();

    auto integrand = [&](double theta) -> Complex {
        const double ct = std::cos(theta), st = std::sin(theta);
        double beta = x1 * ct + x2 * st;
        Complex c = 2.0 * (k.k1 * ct + k.k2 * st);
        if (beta == 0.0) beta = 1e-300;
        if (c.real() == 0.0 && c.imag() == 0.0) c = Complex(1e-300, 0.0);
        return half_line_oscillatory(beta, c);
    };

    // Panel seams: zeros of the oscillation phase (log points), the axes of
    // Re k and Im k (jump / near-log points).
    const double theta_z = std::arg(z.z);
    const double phi = lam.arg();
    std::vector<double> brk;
    for (double t : {theta_z + 0.5 * kPi, theta_z - 0.5 * kPi,
                     phi, phi + kPi, phi + 0.5 * kPi, phi - 0.5 * kPi})
        brk.push_back(wrap_angle(t));

    const Complex pw = plane_wave(z, lam, E);
    const double pw_mag = std::abs(pw);
    const double abs_tol_j = std::max(cfg.abs_tol * 4.0 * kPi * kPi / std::max(pw_mag, 1e-290), 1e-305);

    const QuadResult q = integrate_adaptive(integrand, 0.0, kTwoPi, brk,
                                            cfg.rel_tol, abs_tol_j, cfg.max_subdivisions);
    const Complex g = -q.value / (4.0 * kPi * kPi);
    const Complex raw = pw * g;

    GreenEval out;
    out.method = GreenMethod::DirectQuadrature;
    out.value = raw.real();
    out.imag_abs = std::abs(raw.imag());
    out.est_error = 2.0 * pw_mag * q.est_error / (4.0 * kPi * kPi) + 8e-16 * std::abs(raw);
    return out;
}

GreenEval green_contour_shift(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                              const QuadratureConfig& cfg) {
    if (z.abs() == 0.0)
        throw DomainError("Green function has a logarithmic singularity at z = 0");
    const Frame f = make_frame(z, lam, E);
    require_in_range(f);

    const double bessel = -std::cyl_bessel_k(0.0, E.sqrt_abs() * f.rho) / kTwoPi;

    double corr = 0.0;
    double corr_err = 0.0;
    // Radii within the boundary tolerance of |lambda| = 1 leave no pole strip.
    if (f.r0 > E.sqrt_abs() * kBoundaryTol) {
        auto integrand = [&](double u) -> Complex {
            const double p = std::hypot(u, E.sqrt_abs());
            return Complex(std::cos(u * f.x_m) * std::exp(-p * f.x_n) / p, 0.0);
        };
        // Pre-split on the oscillation/growth scale of the integrand.
        const int n0 = 1 + static_cast<int>(f.r0 * (std::abs(f.x_m) + std::abs(f.x_n)) / 2.0);
        std::vector<double> brk;
        for (int i = 1; i < n0; ++i)
            brk.push_back(f.r0 * static_cast<double>(i) / n0);
        const QuadResult q = integrate_adaptive(integrand, 0.0, f.r0, brk,
                                                cfg.rel_tol, cfg.abs_tol * kTwoPi,
                                                cfg.max_subdivisions);
        corr = q.value.real() / kTwoPi;
        corr_err = q.est_error / kTwoPi;
    }

    GreenEval out;
    out.method = GreenMethod::ContourShift;
    out.value = bessel + corr;
    out.imag_abs = 0.0;
    out.est_error = corr_err + 4e-16 * (std::abs(bessel) + std::abs(corr));
    return out;
}

GreenEval green_eval(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                     const QuadratureConfig& cfg, GreenMethod method) {
    return method == GreenMethod::DirectQuadrature ? green_direct(z, lam, E, cfg)
                                                   : green_contour_shift(z, lam, E, cfg);
}

double green_value(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                   const QuadratureConfig& cfg) {
    return green_contour_shift(z, lam, E, cfg).value;
}

double check_dbar_green(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                        double h, const QuadratureConfig& cfg) {
    if (lam.domain() == DomainTag::Boundary)
        throw DomainError("dbar check undefined on |lambda| = 1");
    const Complex l = lam.lambda();
    const Complex stencil[4] = {l + h, l - h, l + Complex(0.0, h), l - Complex(0.0, h)};
    const double side = lam.sign_factor();
    for (const Complex& p : stencil) {
        if ((std::abs(p) - 1.0) * side <= 0.0)
            throw DomainError("finite-difference stencil straddles |lambda| = 1");
    }

    auto G = [&](Complex p) { return green_value(z, SpectralParam(p), E, cfg); };
    const double d_re = (G(stencil[0]) - G(stencil[1])) / (2.0 * h);
    const double d_im = (G(stencil[2]) - G(stencil[3])) / (2.0 * h);
    const Complex fd = 0.5 * Complex(d_re, 0.0) + 0.5 * Complex(0.0, d_im);

    const Complex rhs = side / (4.0 * kPi * std::conj(l)) * std::conj(plane_wave(z, lam, E));
    return std::abs(fd - rhs);
}

double green_log_coeff(const SpectralParam& lam, const Energy& E, const QuadratureConfig& cfg) {
    const double root = E.sqrt_abs();
    const double radii[3] = {1e-2 / root, 1e-3 / root, 1e-4 / root};
    const Complex dir = std::exp(Complex(0.0, 0.37));
    double G[3];
    for (int i = 0; i < 3; ++i)
        G[i] = green_value(PhysicalPoint(radii[i] * dir), lam, E, cfg);
    const double slope01 = (G[0] - G[1]) / (std::log(radii[0]) - std::log(radii[1]));
    const double slope12 = (G[1] - G[2]) / (std::log(radii[1]) - std::log(radii[2]));
    if (std::abs(slope01 - slope12) > 5e-4 * (1.0 + std::abs(slope12)))
        throw NonConvergence("log-coefficient extrapolation did not stabilize");
    // The slope carries an O(r) term from the regular part; one Richardson
    // step on the radius-10 ladder removes it.
    return slope12 - (slope01 - slope12) / 9.0;
}

double default_radial_cutoff(const Energy& E, const SpectralParam& lam, const PhysicalPoint& z) {
    const double s = lam.abs();
    const double base = std::max(50.0, 40.0 * E.sqrt_abs() * (1.0 + s + 1.0 / s));
    return base * std::max(1.0, 1.0 / std::max(z.abs(), 1e-6));
}

} // namespace moutard
