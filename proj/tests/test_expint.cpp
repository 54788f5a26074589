#include <doctest.h>

#include <complex>

#include "moutard/expint.hpp"
#include "oracles.hpp"

using moutard::e1_scaled;
using moutard::half_line_oscillatory;
using C = std::complex<double>;

namespace {

// exp(w) E1(w), extended-precision references spanning the series / continued
// fraction / asymptotic regions and both sides of the cut.
struct E1Ref {
    C w;
    C val;
};
const E1Ref kE1Refs[] = {
    {{0.5, 0}, {0.92291063248373047, 0.0}},
    {{3, 2}, {0.20205154219901473, -0.10845004238024354}},
    {{-2, 1}, {-0.32714011994022384, -0.44452805855279107}},
    {{-2, -1}, {-0.32714011994022384, 0.44452805855279107}},
    {{8, 0}, {0.11227963925349931, 0.0}},
    {{-8, 3}, {-0.12090321260539105, -0.054676301474868097}},
    {{-8, -3}, {-0.12090321260539105, 0.054676301474868097}},
    {{0, 6}, {0.024521487076024638, -0.15930555357626336}},
    {{0, -6}, {0.024521487076024638, 0.15930555357626336}},
    {{-20, 2}, {-0.052208981558100344, -0.0055325972609711102}},
    {{-20, -2}, {-0.052208981558100344, 0.0055325972609711102}},
    {{40, 10}, {0.02303045784869974, -0.0056231133503077843}},
    {{-35, 5}, {-0.028812830700469806, -0.004245092837179656}},
    {{0.001, 0.001}, {5.9917361710406811, -0.77919210870332484}},
    {{-0.5, 25}, {0.00079100005705934674, -0.03992142529139123}},
    {{12, -18}, {0.026288454808845637, 0.036542112530426878}},
};

struct InnerRef {
    double beta;
    C c;
    C val;
};
const InnerRef kInnerRefs[] = {
    {1.0, {2, 1}, {0.23013102387239689, 0.27369165989024096}},
    {1.0, {2, -1}, {-0.02774870885686364, 0.43433490499847563}},
    {1.0, {-2, 1}, {0.23013102387239689, -0.27369165989024096}},
    {1.0, {-2, -1}, {-2.129548519410763, -1.3962394660514851}},
    {-1.0, {2, 1}, {-0.02774870885686364, -0.43433490499847563}},
    {-1.0, {-2, -1}, {0.23013102387239689, 0.27369165989024096}},
    {2.5, {0.3, -3}, {-0.15638627505026665, 0.021020451152143877}},
    {2.5, {-0.3, -3}, {-0.15875505943692673, -0.018477736051227443}},
    {-2.5, {-0.3, 3}, {-0.15875505943692673, 0.018477736051227443}},
    {0.7, {-4, -0.05}, {-1.9473282869142739, -6.0268769661618194}},
    {0.7, {-4, 0.05}, {0.091242979960750472, -0.30694856786449191}},
    {5.0, {1.5, 2.5}, {0.056626674173898626, 0.031691446467629531}},
    {-3.2, {-1, 4}, {-0.079365005849867281, 0.021947583145227507}},
    {0.05, {6, -7}, {0.32617845914473785, 1.4302177663802035}},
    {4.0, {-9, -2}, {-0.0031038669834847469, -0.027017842398254525}},
    {1.2, {-3, -1e-06}, {2.8395853529087317, -5.885369892803248}},
};

} // namespace

TEST_CASE("scaled E1 matches extended-precision references") {
    for (const auto& r : kE1Refs) {
        const C got = e1_scaled(r.w);
        CAPTURE(r.w.real());
        CAPTURE(r.w.imag());
        CHECK(std::abs(got - r.val) <= 1e-12 * (1.0 + std::abs(r.val)));
    }
}

TEST_CASE("scaled E1 conjugate symmetry") {
    for (const C w : {C(2.3, 4.1), C(-7.0, 2.0), C(-15.0, 0.3), C(33.0, -9.0)}) {
        const C a = e1_scaled(w);
        const C b = e1_scaled(std::conj(w));
        CHECK(std::abs(a - std::conj(b)) <= 1e-13 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("half-line oscillatory integral: frozen references in all quadrants") {
    for (const auto& r : kInnerRefs) {
        const C got = half_line_oscillatory(r.beta, r.c);
        CAPTURE(r.beta);
        CAPTURE(r.c.real());
        CAPTURE(r.c.imag());
        CHECK(std::abs(got - r.val) <= 1e-11 * (1.0 + std::abs(r.val)));
    }
}

TEST_CASE("half-line oscillatory integral agrees with brute-force quadrature") {
    // Random-ish sweep including near-axis poles on both sides.
    const double betas[] = {0.4, -1.7, 3.1};
    const C cs[] = {{1.0, 0.8}, {-1.2, 0.6}, {-2.5, -0.4}, {0.2, -2.2}, {-5.0, 0.02}};
    for (double b : betas) {
        for (const C& c : cs) {
            const C got = half_line_oscillatory(b, c);
            const C ref = moutard::oracle::half_line_brute(b, c);
            CAPTURE(b);
            CAPTURE(c.real());
            CAPTURE(c.imag());
            CHECK(std::abs(got - ref) <= 1e-9 * (1.0 + std::abs(ref)));
        }
    }
}
