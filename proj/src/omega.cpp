#include "moutard/omega.hpp"

#include <cmath>

namespace moutard {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

} // namespace

OmegaClosedForm creation_form(OmegaKind kind, const Coupling& alpha) {
    OmegaClosedForm f{kind, 0.0, 0.0};
    if (kind == OmegaKind::FF_Creation) {
        f.c_plus = 4.0 * kPi / alpha.alpha();
        f.c_minus = f.c_plus;
    }
    return f;
}

OmegaClosedForm annihilation_form(OmegaKind kind) {
    return OmegaClosedForm{kind, 0.0, 0.0};
}

Complex omega_closed(const OmegaClosedForm& form, const PhysicalPoint& z,
                     const SpectralParam& lam, const Energy& E, const Coupling& alpha,
                     const QuadratureConfig& cfg) {
    const double c = form.constant_for(lam);
    switch (form.kind) {
    case OmegaKind::FF_Creation:
        return kI * (2.0 * std::abs(std::log(lam.abs())) + std::log(E.abs())) - kI * c;
    case OmegaKind::PsiF_Creation:
        return 4.0 * kPi * kI * green_value(z, lam, E, cfg) + kI * c;
    case OmegaKind::FPsiStar_Creation: {
        const double sign = lam.sign_factor();
        const SpectralParam neg(-lam.lambda());
        return 4.0 * kPi * kI * sign * green_value(z, neg, E, cfg) + kI * c;
    }
    case OmegaKind::FF_Annihilation:
        return kI / kPi * a_point(lam, E, alpha) + kI * c;
    case OmegaKind::PsiF_Annihilation: {
        const double d = denom(lam, E, alpha);
        if (std::abs(d) < kSingTol)
            throw SingularPoint("omega undefined on a singular circle");
        return -4.0 * kI * green_value(z, lam, E, cfg) / d + kI * c;
    }
    case OmegaKind::FPsiStar_Annihilation: {
        const double d = denom(lam, E, alpha);
        if (std::abs(d) < kSingTol)
            throw SingularPoint("omega undefined on a singular circle");
        const double sign = lam.sign_factor();
        const SpectralParam neg(-lam.lambda());
        return -4.0 * kI * sign * green_value(z, neg, E, cfg) / d + kI * c;
    }
    }
    throw ConfigError("unknown omega kind");
}

Complex omega_integrate(const LambdaField& psi, const LambdaField& psi_star,
                        const IntegrationPath& path, int n_panels,
                        const std::vector<ExclusionBand>& bands,
                        const QuadratureConfig& cfg) {
    if (path.waypoints.size() < 2)
        throw PathError("integration path needs at least two waypoints");
    AnnulusGrid band_holder; // only the bands matter for segment checks
    band_holder.exclusions = bands;

    Complex acc = path.base_value;
    for (size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
        const Complex a = path.waypoints[i].lambda();
        const Complex b = path.waypoints[i + 1].lambda();
        if (!band_holder.segment_clear(a, b))
            throw PathError("path segment crosses an excluded circle or |lambda| = 1");
        const Complex delta = b - a;
        auto f = [&](double t) -> Complex {
            const SpectralParam l(a + t * delta);
            const Complex p = psi(l) * psi_star(l) * delta;
            return Complex(0.0, 2.0 * p.imag()); // p dlambda - conj(p dlambda)
        };
        std::vector<double> brk;
        for (int j = 1; j < n_panels; ++j)
            brk.push_back(static_cast<double>(j) / n_panels);
        const QuadResult q = integrate_adaptive(f, 0.0, 1.0, brk, cfg.rel_tol, cfg.abs_tol,
                                                cfg.max_subdivisions);
        acc += q.value;
    }
    return acc;
}

ResidualReport check_omega_gradient(const OmegaClosedForm& form, const PhysicalPoint& z,
                                    const Energy& E, const Coupling& alpha,
                                    const LambdaField& psi, const LambdaField& psi_star,
                                    const AnnulusGrid& grid, double h_rel,
                                    const QuadratureConfig& cfg) {
    LambdaField omega{
        [&](const SpectralParam& l) { return omega_closed(form, z, l, E, alpha, cfg); },
        "omega_closed"};
    ResidualReport rep;
    rep.h = h_rel;
    for (const SpectralParam& lam : grid.points()) {
        const double h = h_rel * lam.abs();
        if (!stencil_ok(lam, h, grid)) {
            ++rep.n_skipped;
            continue;
        }
        const Complex prod = psi(lam) * psi_star(lam);
        rep.add(lam.lambda(), std::abs(d_fd(omega, lam, h) - prod));
        rep.add(lam.lambda(), std::abs(dbar_fd(omega, lam, h) + std::conj(prod)));
    }
    rep.finish();
    return rep;
}

} // namespace moutard
