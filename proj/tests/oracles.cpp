#include "oracles.hpp"

#include <cmath>

#include "moutard/quadrature.hpp"

namespace moutard::oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
using C = std::complex<double>;
} // namespace

GreenEval green_truncated_grid(const PhysicalPoint& z, const SpectralParam& lam, const Energy& E,
                               double radial_cutoff, int n_radial, int n_angular) {
    const KVector k = k_from_lambda(E, lam);
    const C kre(k.k1.real(), k.k2.real());   // Re k as a 2-vector in complex form
    const C kim(k.k1.imag(), k.k2.imag());
    const double x1 = z.x1(), x2 = z.x2();
    const double R = radial_cutoff;

    // xi = -Re k + eta; the integrand then pairs eta with -eta as complex
    // conjugates, so a symmetric grid keeps the shifted integral real.
    C acc(0.0, 0.0);
    for (int i = 0; i < n_radial; ++i) {
        const double u = R * (i + 0.5) / n_radial;
        const double du = R / n_radial;
        C ring(0.0, 0.0);
        for (int j = 0; j < n_angular; ++j) {
            const double th = 2.0 * kPi * (j + 0.5) / n_angular;
            const double e1 = -kre.real() + u * std::cos(th);
            const double e2 = -kre.imag() + u * std::sin(th);
            const C phase = std::exp(C(0.0, e1 * x1 + e2 * x2));
            const C denom = C(e1 * e1 + e2 * e2, 0.0) +
                            2.0 * (k.k1 * e1 + k.k2 * e2);
            ring += phase / denom;
        }
        acc += ring * (u * du * 2.0 * kPi / n_angular);
    }
    const C g = -acc / (4.0 * kPi * kPi);
    const C raw = plane_wave(z, lam, E) * g;

    // Tail: |integrand| <~ 1/u^2 beyond the cutoff with an oscillation gain of
    // one power of (rho u)^(1/2); keep the crude monotone bound.
    const double rho = z.abs();
    const double tail = std::abs(plane_wave(z, lam, E)) / (4.0 * kPi * kPi) * 2.0 *
                        std::sqrt(2.0 * kPi / std::max(rho, 1e-6)) * (2.0 / rho) /
                        std::pow(R, 1.5) * 4.0 * kPi;

    GreenEval out;
    out.method = GreenMethod::DirectQuadrature;
    out.value = raw.real();
    out.imag_abs = std::abs(raw.imag());
    out.est_error = tail + 10.0 * R / n_radial;
    return out;
}

C half_line_brute(double beta, C c) {
    const double U = 60.0 / std::abs(beta) + 10.0 * std::abs(c) + 20.0;
    std::vector<double> brk;
    const double pr = -c.real();
    if (pr > 0.0 && pr < U) {
        for (double d : {1.0, 0.01})
            for (double s : {-1.0, 1.0})
                if (pr + s * d > 0.0) brk.push_back(pr + s * d);
        brk.push_back(pr);
    }
    brk.push_back(U / 3.0);
    auto head_f = [&](double u) { return std::exp(C(0.0, beta * u)) / (u + c); };
    const QuadResult head = integrate_adaptive(head_f, 0.0, U, brk, 1e-12, 1e-13, 20000);

    // Rotated tail u = U + i s t, s = sign(beta).
    const double s = beta > 0.0 ? 1.0 : -1.0;
    const double T = 80.0 / std::abs(beta);
    auto tail_f = [&](double t) {
        const C u(U, s * t);
        return std::exp(C(0.0, beta) * u) / (u + c) * C(0.0, s);
    };
    const QuadResult tail = integrate_adaptive(tail_f, 0.0, T, {T / 7.0}, 1e-12, 1e-13, 20000);
    return head.value + tail.value;
}

double laplacian_residual(const std::function<C(C)>& f, C z, double E, double h) {
    const C fz = f(z);
    const C sum = f(z + h) + f(z - h) + f(z + C(0.0, h)) + f(z - C(0.0, h));
    const C lap = (sum - 4.0 * fz) / (h * h);
    return std::abs(lap + E * fz);
}

} // namespace moutard::oracle
