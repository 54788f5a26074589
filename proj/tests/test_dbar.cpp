#include <doctest.h>

#include <cmath>

#include "moutard/dbar.hpp"

using namespace moutard;
using doctest::Approx;

namespace {
const Energy kE1(-1.0);
const Coupling kAlphaPi(3.14159265358979323846);
const Complex kI(0.0, 1.0);
} // namespace

TEST_CASE("finite-difference dbar on reference fields") {
    LambdaField sq{[](const SpectralParam& l) { return l.lambda() * l.lambda(); }, "l^2"};
    LambdaField conj_f{[](const SpectralParam& l) { return std::conj(l.lambda()); }, "conj l"};
    LambdaField abs2{[](const SpectralParam& l) { return Complex(std::norm(l.lambda()), 0.0); },
                     "|l|^2"};
    const SpectralParam lam(Complex(1.3, 0.7));
    const double h = 1e-4;
    CHECK(std::abs(dbar_fd(sq, lam, h)) <= 1e-9);
    CHECK(std::abs(dbar_fd(conj_f, lam, h) - 1.0) <= 1e-9);
    CHECK(std::abs(dbar_fd(abs2, lam, h) - lam.lambda()) <= 1e-9);

    // d/d(lambda) side of the stencil.
    CHECK(std::abs(d_fd(sq, lam, h) - 2.0 * lam.lambda()) <= 1e-8);
    CHECK(std::abs(d_fd(conj_f, lam, h)) <= 1e-9);
}

TEST_CASE("dbar stencil converges at second order") {
    // Field with nonvanishing third derivatives in both variables.
    LambdaField f{[](const SpectralParam& l) {
                      const Complex lm = l.lambda();
                      return std::exp(lm) * std::conj(lm) * std::conj(lm) * std::conj(lm);
                  },
                  "exp(l) conj(l)^3"};
    const SpectralParam lam(Complex(0.9, -0.4));
    auto exact = [&](const SpectralParam& l) {
        const Complex lm = l.lambda();
        return std::exp(lm) * 3.0 * std::conj(lm) * std::conj(lm);
    };
    double prev = 0.0;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
        const double r = std::abs(dbar_fd(f, lam, h) - exact(lam));
        if (prev > 0.0)
            CHECK(std::log2(prev / r) >= 1.9);
        prev = r;
    }
}

TEST_CASE("grid construction") {
    SUBCASE("bands at the unit circle and the singular circles") {
        const AnnulusGrid g = build_grid(0.1, 10.0, 40, 32, kE1, kAlphaPi);
        REQUIRE(g.exclusions.size() == 3);
        CHECK(g.exclusions[0].center_radius == 1.0);
        CHECK(g.exclusions[1].center_radius == Approx(std::exp(-2.0)));
        CHECK(g.exclusions[2].center_radius == Approx(std::exp(2.0)));
        CHECK(g.excluded(1.005));
        CHECK_FALSE(g.excluded(1.5));
        for (const SpectralParam& p : g.points())
            CHECK_FALSE(g.excluded(p.abs()));
    }
    SUBCASE("vacuum-style grid keeps only the unit-circle band") {
        const AnnulusGrid g = build_grid(0.5, 2.0, 10, 8, Energy(-std::exp(5.0)), kAlphaPi);
        CHECK(g.exclusions.size() == 1);
        CHECK(g.exclusions[0].center_radius == 1.0);
    }
    SUBCASE("fully excluded grid is rejected") {
        CHECK_THROWS_AS(build_grid(0.995, 1.005, 10, 8, Energy(-std::exp(5.0)), kAlphaPi),
                        ConfigError);
        CHECK_THROWS_AS(build_grid(-0.1, 10.0, 10, 8, kE1, kAlphaPi), ConfigError);
        CHECK_THROWS_AS(build_grid(0.2, 0.9, 10, 8, kE1, kAlphaPi), ConfigError);
    }
    SUBCASE("segment clearance") {
        const AnnulusGrid g = build_grid(0.1, 10.0, 20, 16, kE1, kAlphaPi);
        CHECK(g.segment_clear(Complex(2.0, 0.0), Complex(3.0, 1.0)));
        CHECK_FALSE(g.segment_clear(Complex(0.5, 0.0), Complex(2.0, 0.0))); // crosses |l|=1
        CHECK_FALSE(g.segment_clear(Complex(6.0, 0.0), Complex(8.0, 0.0))); // crosses e^2
        CHECK(g.segment_clear(Complex(-3.0, 2.5), Complex(3.0, 2.5)));      // chord misses bands
    }
}

TEST_CASE("stencil validation against bands") {
    const AnnulusGrid g = build_grid(0.1, 10.0, 20, 16, kE1, kAlphaPi);
    LambdaField one{[](const SpectralParam&) { return Complex(1.0, 0.0); }, "1"};
    CHECK(stencil_ok(SpectralParam(Complex(2.0, 0.0)), 1e-3, g));
    // Point just outside a band: the stencil reaches into it.
    const double rs = std::exp(2.0);
    CHECK_FALSE(stencil_ok(SpectralParam(Complex(rs * 1.0101, 0.0)), 0.02 * rs, g));
    CHECK_THROWS_AS(dbar_fd(one, SpectralParam(Complex(rs * 1.0101, 0.0)), 0.02 * rs, g),
                    StencilError);
    CHECK(std::abs(dbar_fd(one, SpectralParam(Complex(2.0, 0.0)), 1e-3, g)) == 0.0);
}

TEST_CASE("conjugate-pair residuals") {
    const AnnulusGrid grid = build_grid(0.3, 4.0, 8, 6, kE1, kAlphaPi);
    LambdaField B0{[](const SpectralParam&) { return Complex(0.0, 0.0); }, "0"};
    SUBCASE("vacuum pair against B = 0") {
        const Energy E = kE1;
        const PhysicalPoint z(0.8, 0.3);
        LambdaField psi{[=](const SpectralParam& l) { return plane_wave(z, l, E); }, "pw"};
        LambdaField psi_star{
            [=](const SpectralParam& l) { return kI / l.lambda() * plane_wave_inverse(z, l, E); },
            "pw*"};
        auto [r1, r2] = check_dbar_pair(psi, psi_star, B0, grid, 1e-3);
        CHECK(r1.n_points > 0);
        CHECK(r1.max_abs <= 1e-3);
        CHECK(r2.max_abs <= 1e-3);
        CHECK(r1.max_abs >= r1.rms);
        // Refinement drops the residual at second order.
        auto [r1b, r2b] = check_dbar_pair(psi, psi_star, B0, grid, 5e-4);
        CHECK(r1b.max_abs <= 0.3 * r1.max_abs);
        CHECK(r2b.max_abs <= 0.3 * r2.max_abs);
    }
    SUBCASE("seed pair of the creation scenario is holomorphic off the circle") {
        LambdaField f{[](const SpectralParam&) { return Complex(1.0, 0.0); }, "1"};
        LambdaField fs{[](const SpectralParam& l) { return kI * l.sign_factor() / l.lambda(); },
                       "i sign/l"};
        auto [r1, r2] = check_dbar_pair(f, fs, B0, grid, 1e-3);
        CHECK(r1.max_abs <= 1e-12);       // constant: stencil cancels exactly
        CHECK(r2.max_abs <= 1e-4);        // 1/lambda: pure truncation error
        auto [r1b, r2b] = check_dbar_pair(f, fs, B0, grid, 5e-4);
        (void)r1b;
        CHECK(r2b.max_abs <= 0.3 * r2.max_abs);
    }
}

TEST_CASE("symmetry checkers") {
    const AnnulusGrid grid = build_grid(0.2, 5.0, 10, 8, kE1, kAlphaPi);
    SUBCASE("closed-form data passes at rounding level") {
        LambdaField B{[](const SpectralParam& l) { return B_point(l, kE1, kAlphaPi); }, "B"};
        LambdaField b{[](const SpectralParam& l) {
                          return Complex(b_point(l, kE1, kAlphaPi), 0.0);
                      },
                      "b"};
        double scale = 0.0;
        for (const SpectralParam& l : grid.points())
            scale = std::max(scale, std::abs(B_point(l, kE1, kAlphaPi)));
        CHECK(check_symmetries_B(B, grid).max_abs <= 1e-13 * scale);
        CHECK(check_symmetries_b(b, grid).max_abs <= 1e-13 * scale);
    }
    SUBCASE("zero field") {
        LambdaField zero{[](const SpectralParam&) { return Complex(0.0, 0.0); }, "0"};
        CHECK(check_symmetries_B(zero, grid).max_abs == 0.0);
        CHECK(check_symmetries_b(zero, grid).max_abs == 0.0);
    }
    SUBCASE("negative controls") {
        LambdaField lam_field{[](const SpectralParam& l) { return l.lambda(); }, "l"};
        LambdaField im_field{[](const SpectralParam& l) {
                                 return Complex(l.lambda().imag(), 0.0);
                             },
                             "Im l"};
        CHECK(check_symmetries_B(lam_field, grid).max_abs > 0.1);
        CHECK(check_symmetries_b(im_field, grid).max_abs > 0.1);
    }
    SUBCASE("constant real field is radial") {
        LambdaField c{[](const SpectralParam&) { return Complex(0.7, 0.0); }, "c"};
        CHECK(check_symmetries_b(c, grid).max_abs == 0.0);
    }
}
