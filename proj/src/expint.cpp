#include "moutard/expint.hpp"

#include <cmath>
#include <limits>

#include "moutard/errors.hpp"

namespace moutard {

namespace {

using C = std::complex<double>;

constexpr double kEulerGamma = 0.57721566490153286060651209008;

// Power series E1(w) = -gamma - log w - sum_{n>=1} (-w)^n / (n n!).
// Used for small |w| and, because the terms do not cancel there, for the
// whole left half-plane wedge up to |w| ~ 30.
C e1_scaled_series(C w) {
    C term(1.0, 0.0);
    C acc(0.0, 0.0);
    for (int n = 1; n < 120; ++n) {
        term *= -w / static_cast<double>(n);
        const C add = term / static_cast<double>(n);
        acc += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(acc)))
            break;
    }
    const C e1 = -kEulerGamma - std::log(w) - acc;
    return std::exp(w) * e1;
}

// Modified Lentz evaluation of the continued fraction
//   exp(w) E1(w) = 1 / (w + 1 - 1^2 / (w + 3 - 2^2 / (w + 5 - ...))).
C e1_scaled_cf(C w) {
    const double tiny = 1e-300;
    C f = w + 1.0;
    if (std::abs(f) < tiny) f = tiny;
    C big_c = f;
    C big_d(0.0, 0.0);
    for (int j = 1; j < 400; ++j) {
        const double a = -static_cast<double>(j) * static_cast<double>(j);
        const C b = w + static_cast<double>(2 * j + 1);
        big_d = b + a * big_d;
        if (std::abs(big_d) < tiny) big_d = tiny;
        big_c = b + a / big_c;
        if (std::abs(big_c) < tiny) big_c = tiny;
        big_d = 1.0 / big_d;
        const C delta = big_c * big_d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return 1.0 / f;
    }
    return 1.0 / f; // worst case ~1e-12 near the convergence boundary
}

// Asymptotic series exp(w) E1(w) ~ (1/w) sum (-1)^n n! / w^n, truncated at the
// smallest term. Valid for large |w| in every direction.
C e1_scaled_asymptotic(C w) {
    C term(1.0, 0.0);
    C acc(1.0, 0.0);
    double prev = 1.0;
    for (int n = 1; n < 80; ++n) {
        term *= -static_cast<double>(n) / w;
        const double m = std::abs(term);
        if (m > prev)
            break; // divergent tail reached
        acc += term;
        prev = m;
        if (m < 1e-17)
            break;
    }
    return acc / w;
}

} // namespace

C e1_scaled(C w) {
    const double m = std::abs(w);
    if (m == 0.0)
        throw DomainError("E1 undefined at w = 0");
    if (m >= 30.0)
        return e1_scaled_asymptotic(w);
    if (m <= 4.0)
        return e1_scaled_series(w);
    // Left wedge: series terms keep a common sign pattern, no cancellation.
    if (w.real() <= 0.0 && std::abs(w.imag()) <= -w.real())
        return e1_scaled_series(w);
    return e1_scaled_cf(w);
}

C half_line_oscillatory(double beta, C c) {
    if (beta == 0.0)
        throw DomainError("half_line_oscillatory requires beta != 0");
    if (beta < 0.0)
        return std::conj(half_line_oscillatory(-beta, std::conj(c)));
    // w = -i beta c, built componentwise to keep the signed zero of Im w.
    const C w(beta * c.imag(), -beta * c.real());
    C val = e1_scaled(w);
    // Rotating the contour to the E1 ray crosses the pole u = -c exactly when
    // -c lies in the open first quadrant, i.e. arg c in (-pi, -pi/2).
    const double a = std::arg(c);
    constexpr double half_pi = 1.5707963267948966;
    if (a > -3.1415926535897932 && a < -half_pi)
        val += C(0.0, 2.0 * 3.1415926535897932) * std::exp(w);
    return val;
}

} // namespace moutard
