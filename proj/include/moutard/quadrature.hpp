#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace moutard {

// Tolerances and budget for a numerical evaluation.
struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int max_subdivisions = 4000;  // panel budget for adaptive bisection
    double radial_cutoff = 0.0;   // truncation radius of the brute-force reference
                                  // integrator; 0 = pick automatically
};

struct QuadResult {
    std::complex<double> value;
    double est_error = 0.0;
    int panels = 0;
};

// Adaptive panel integration of a complex-valued integrand over [a, b].
// Initial panels are split at the given breakpoints (sorted, clamped to (a,b));
// refinement bisects the panel with the largest Gauss-Kronrod-style error
// indicator until sum of indicators < max(abs_tol, rel_tol * |value|).
// Throws NonConvergence if the panel budget is exhausted.
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                              double a, double b,
                              std::vector<double> breakpoints,
                              double rel_tol, double abs_tol, int max_panels);

} // namespace moutard
