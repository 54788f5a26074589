#include "moutard/moutard.hpp"

#include <cmath>
#include <map>
#include <memory>

namespace moutard {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

// Memoizing Green evaluator for one (z, E): the scenario drivers deliberately
// share a single G(z, lambda) evaluation between a transformed field and its
// closed-form target, so residuals measure algebra, not quadrature scatter.
class GreenCache {
public:
    GreenCache(PhysicalPoint z, Energy E, QuadratureConfig cfg)
        : z_(z), E_(E), cfg_(cfg), table_(std::make_shared<Table>()),
          max_err_(std::make_shared<double>(0.0)) {}

    double operator()(Complex lambda) const {
        const auto key = std::make_pair(lambda.real(), lambda.imag());
        auto it = table_->find(key);
        if (it != table_->end())
            return it->second;
        const GreenEval ge = green_contour_shift(z_, SpectralParam(lambda), E_, cfg_);
        *max_err_ = std::max(*max_err_, ge.est_error);
        table_->emplace(key, ge.value);
        return ge.value;
    }

    double max_err() const { return *max_err_; }

private:
    using Table = std::map<std::pair<double, double>, double>;
    PhysicalPoint z_;
    Energy E_;
    QuadratureConfig cfg_;
    std::shared_ptr<Table> table_;
    std::shared_ptr<double> max_err_;
};

// Ring of the band-free radial decomposition containing r.
std::pair<double, double> ring_of(const AnnulusGrid& grid, double r) {
    double lo = grid.r_min * 0.5;
    double hi = grid.r_max * 2.0;
    for (const auto& band : grid.exclusions) {
        const double top = band.center_radius + band.half_width;
        const double bot = band.center_radius - band.half_width;
        if (top <= r) lo = std::max(lo, top);
        if (bot >= r) hi = std::min(hi, bot);
    }
    return {lo, hi};
}

// Polyline from an anchor on the positive real axis to lambda, staying inside
// one ring: radial leg, then short chords along the target circle.
IntegrationPath ring_path(const AnnulusGrid& grid, const SpectralParam& lam, Complex base_value,
                          double anchor_r) {
    const double r = lam.abs();
    const double theta = lam.arg();
    IntegrationPath path;
    path.base_value = base_value;
    path.waypoints.emplace_back(Complex(anchor_r, 0.0));
    if (std::abs(r - anchor_r) > 1e-14 * anchor_r)
        path.waypoints.emplace_back(Complex(r, 0.0));
    const auto [lo, hi] = ring_of(grid, r);
    (void)hi;
    double dmax = 0.35;
    if (lo > 0.0 && r > lo)
        dmax = std::min(dmax, 1.8 * std::acos(std::min(1.0, lo / r)));
    dmax = std::max(dmax, 0.02);
    const int steps = static_cast<int>(std::ceil(std::abs(theta) / dmax));
    for (int i = 1; i <= steps; ++i) {
        const double t = theta * static_cast<double>(i) / steps;
        path.waypoints.emplace_back(std::polar(r, t));
    }
    return path;
}

double pick_anchor(const AnnulusGrid& grid, double r) {
    const auto [lo, hi] = ring_of(grid, r);
    for (double candidate : {2.0, 0.5})
        if (candidate > lo && candidate < hi)
            return candidate;
    return std::sqrt(lo * hi);
}

LambdaField omega_path_field(const OmegaClosedForm& form, const PhysicalPoint& z,
                             const Energy& E, const Coupling& alpha, const LambdaField& psi,
                             const LambdaField& psi_star, const AnnulusGrid& grid,
                             const QuadratureConfig& cfg) {
    return LambdaField{
        [=](const SpectralParam& lam) -> Complex {
            const double anchor_r = pick_anchor(grid, lam.abs());
            const SpectralParam anchor{Complex(anchor_r, 0.0)};
            const Complex base = omega_closed(form, z, anchor, E, alpha, cfg);
            const IntegrationPath path = ring_path(grid, lam, base, anchor_r);
            return omega_integrate(psi, psi_star, path, 4, grid.exclusions, cfg);
        },
        "omega[path]"};
}

struct ScenarioFields {
    LambdaField psi_in;        // input solution of the first equation
    LambdaField psi_star_in;   // input solution of the conjugate equation
    LambdaField psi_expected;  // transformed target
    LambdaField psi_star_expected;
    LambdaField omega_pf;      // omega_{psi, f*}
    LambdaField omega_fp;      // omega_{f, psi*}
};

ScenarioResult run_scenario(bool creation, const Energy& E, const Coupling& alpha,
                            const AnnulusGrid& grid, const std::vector<PhysicalPoint>& z_samples,
                            double h_rel, const QuadratureConfig& cfg, OmegaMode mode,
                            std::optional<double> c_ff_override) {
    const MoutardSeed seed = creation ? vacuum_seed(E, alpha, c_ff_override)
                                      : point_seed(E, alpha, c_ff_override);
    verify_seed(seed, grid, h_rel);

    ScenarioResult out;
    out.grid = grid;
    out.energy = E.value();
    out.alpha = alpha.alpha();
    out.residual_B.h = h_rel;
    out.residual_psi.h = h_rel;
    out.residual_psi_star.h = h_rel;
    out.residual_transformed_dbar.h = h_rel;

    const auto points = grid.points();

    // Spectral data: closed-form algebra only.
    for (const SpectralParam& lam : points) {
        try {
            const Complex Bt = moutard_B(seed, lam);
            const Complex Bexp =
                creation ? B_point(lam, E, alpha) : Complex(0.0, 0.0);
            out.residual_B.add(lam.lambda(), std::abs(Bt - Bexp));
            out.b_scale = std::max(out.b_scale, std::abs(creation ? Bexp : B_point(lam, E, alpha)));
        } catch (const Error&) {
            ++out.residual_B.n_skipped;
        }
    }
    out.residual_B.finish();

    for (const PhysicalPoint& z : z_samples) {
        out.z_samples.push_back(z.z);
        GreenCache cache(z, E, cfg);

        auto denom_of = [E, alpha](const SpectralParam& l) { return denom(l, E, alpha); };

        LambdaField plane{[=](const SpectralParam& l) { return plane_wave(z, l, E); }, "e^{ikx}"};
        LambdaField plane_star{
            [=](const SpectralParam& l) {
                return kI / l.lambda() * plane_wave_inverse(z, l, E);
            },
            "(i/l) e^{-ikx}"};
        LambdaField point_psi{
            [=](const SpectralParam& l) {
                return plane_wave(z, l, E) - 4.0 * kPi * cache(l.lambda()) / denom_of(l);
            },
            "psi_point"};
        LambdaField point_psi_star{
            [=](const SpectralParam& l) {
                return kI / l.lambda() *
                       (plane_wave_inverse(z, l, E) -
                        4.0 * kPi * cache(-l.lambda()) / denom_of(l));
            },
            "psi_star_point"};

        ScenarioFields f;
        const OmegaKind kind_pf =
            creation ? OmegaKind::PsiF_Creation : OmegaKind::PsiF_Annihilation;
        const OmegaKind kind_fp =
            creation ? OmegaKind::FPsiStar_Creation : OmegaKind::FPsiStar_Annihilation;
        if (creation) {
            f.psi_in = plane;
            f.psi_star_in = plane_star;
            f.psi_expected = point_psi;
            f.psi_star_expected = point_psi_star;
            f.omega_pf = LambdaField{
                [=](const SpectralParam& l) {
                    return 4.0 * kPi * kI * cache(l.lambda());
                },
                "omega_pf"};
            f.omega_fp = LambdaField{
                [=](const SpectralParam& l) {
                    return 4.0 * kPi * kI * l.sign_factor() * cache(-l.lambda());
                },
                "omega_fp"};
        } else {
            f.psi_in = point_psi;
            f.psi_star_in = point_psi_star;
            f.psi_expected = plane;
            f.psi_star_expected = plane_star;
            f.omega_pf = LambdaField{
                [=](const SpectralParam& l) {
                    return -4.0 * kI * cache(l.lambda()) / denom_of(l);
                },
                "omega_pf"};
            f.omega_fp = LambdaField{
                [=](const SpectralParam& l) {
                    return -4.0 * kI * l.sign_factor() * cache(-l.lambda()) / denom_of(l);
                },
                "omega_fp"};
        }
        if (mode == OmegaMode::PathIntegrated) {
            f.omega_pf = omega_path_field(creation ? creation_form(kind_pf, alpha)
                                                   : annihilation_form(kind_pf),
                                          z, E, alpha, f.psi_in, seed.f_star, grid, cfg);
            f.omega_fp = omega_path_field(creation ? creation_form(kind_fp, alpha)
                                                   : annihilation_form(kind_fp),
                                          z, E, alpha, seed.f, f.psi_star_in, grid, cfg);
        }

        for (const SpectralParam& lam : points) {
            try {
                const Complex pt = moutard_psi(seed, f.psi_in, f.omega_pf.eval, lam);
                const Complex pst = moutard_psi_star(seed, f.psi_star_in, f.omega_fp.eval, lam);
                out.residual_psi.add(lam.lambda(), std::abs(pt - f.psi_expected(lam)));
                out.residual_psi_star.add(lam.lambda(), std::abs(pst - f.psi_star_expected(lam)));
            } catch (const Error&) {
                ++out.residual_psi.n_skipped;
                ++out.residual_psi_star.n_skipped;
            }
        }

        // Transformed pair must satisfy the Moutard-transformed equations with
        // the transformed data. Closed-form omegas keep the stencil evaluations
        // tractable in either mode.
        LambdaField psi_t{[=](const SpectralParam& l) {
                              GreenCache c2 = cache;
                              LambdaField opf = creation
                                  ? LambdaField{[=](const SpectralParam& m) {
                                        return 4.0 * kPi * kI * c2(m.lambda());
                                    }, ""}
                                  : LambdaField{[=](const SpectralParam& m) {
                                        return -4.0 * kI * c2(m.lambda()) / denom(m, E, alpha);
                                    }, ""};
                              return moutard_psi(seed, creation ? plane : point_psi, opf.eval, l);
                          },
                          "psi_tilde"};
        LambdaField psi_star_t{[=](const SpectralParam& l) {
                                   GreenCache c2 = cache;
                                   LambdaField ofp = creation
                                       ? LambdaField{[=](const SpectralParam& m) {
                                             return 4.0 * kPi * kI * m.sign_factor() *
                                                    c2(-m.lambda());
                                         }, ""}
                                       : LambdaField{[=](const SpectralParam& m) {
                                             return -4.0 * kI * m.sign_factor() *
                                                    c2(-m.lambda()) / denom(m, E, alpha);
                                         }, ""};
                                   return moutard_psi_star(
                                       seed, creation ? plane_star : point_psi_star, ofp.eval, l);
                               },
                               "psi_star_tilde"};
        LambdaField B_t{[=](const SpectralParam& l) { return moutard_B(seed, l); }, "B_tilde"};

        auto [r1, r2] = check_dbar_pair(psi_t, psi_star_t, B_t, grid, h_rel);
        // Merge the two reports into the scenario aggregate.
        out.residual_transformed_dbar.max_abs =
            std::max({out.residual_transformed_dbar.max_abs, r1.max_abs, r2.max_abs});
        const double sq = r1.rms * r1.rms * static_cast<double>(r1.n_points) +
                          r2.rms * r2.rms * static_cast<double>(r2.n_points);
        out.residual_transformed_dbar.rms += sq;
        out.residual_transformed_dbar.n_points += r1.n_points + r2.n_points;
        out.residual_transformed_dbar.n_skipped += r1.n_skipped + r2.n_skipped;

        out.green_err_max = std::max(out.green_err_max, cache.max_err());
    }
    out.residual_psi.finish();
    out.residual_psi_star.finish();
    if (out.residual_transformed_dbar.n_points > 0)
        out.residual_transformed_dbar.rms = std::sqrt(
            out.residual_transformed_dbar.rms /
            static_cast<double>(out.residual_transformed_dbar.n_points));
    return out;
}

} // namespace

MoutardSeed vacuum_seed(const Energy& E, const Coupling& alpha, std::optional<double> c_ff) {
    MoutardSeed seed;
    seed.c_plus = c_ff.value_or(4.0 * kPi / alpha.alpha());
    seed.c_minus = seed.c_plus;
    const double c = seed.c_plus;
    seed.B = LambdaField{[](const SpectralParam&) { return Complex(0.0, 0.0); }, "0"};
    seed.f = LambdaField{[](const SpectralParam&) { return Complex(1.0, 0.0); }, "1"};
    seed.f_star = LambdaField{
        [](const SpectralParam& l) { return kI * l.sign_factor() / l.lambda(); },
        "i sign/lambda"};
    seed.omega_ff = [E, c](const SpectralParam& l) {
        return kI * (2.0 * std::abs(std::log(l.abs())) + std::log(E.abs()) - c);
    };
    return seed;
}

MoutardSeed point_seed(const Energy& E, const Coupling& alpha, std::optional<double> c_ff) {
    MoutardSeed seed;
    seed.c_plus = c_ff.value_or(0.0);
    seed.c_minus = seed.c_plus;
    const double c = seed.c_plus;
    seed.B = LambdaField{[E, alpha](const SpectralParam& l) { return B_point(l, E, alpha); },
                         "B_point"};
    seed.f = LambdaField{
        [E, alpha](const SpectralParam& l) { return Complex(a_point(l, E, alpha), 0.0); },
        "a"};
    seed.f_star = LambdaField{
        [E, alpha](const SpectralParam& l) {
            return kI * l.sign_factor() / l.lambda() * a_point(l, E, alpha);
        },
        "(i sign/lambda) a"};
    seed.omega_ff = [E, alpha, c](const SpectralParam& l) {
        return kI / kPi * a_point(l, E, alpha) + kI * c;
    };
    return seed;
}

Complex moutard_B(const MoutardSeed& seed, const SpectralParam& lam) {
    const Complex num = seed.f(lam) * std::conj(seed.f_star(lam));
    const Complex w = seed.omega_ff(lam);
    if (std::abs(w) < kOmegaZeroTol * (1.0 + std::abs(num)))
        throw DivisionByZeroOmega("omega_{f,f*} vanishes at this lambda");
    return seed.B(lam) + num / w;
}

Complex moutard_psi(const MoutardSeed& seed, const LambdaField& psi,
                    const std::function<Complex(const SpectralParam&)>& omega_psi_fstar,
                    const SpectralParam& lam) {
    const Complex w = seed.omega_ff(lam);
    const Complex fv = seed.f(lam);
    if (std::abs(w) < kOmegaZeroTol * (1.0 + std::abs(fv * std::conj(seed.f_star(lam)))))
        throw DivisionByZeroOmega("omega_{f,f*} vanishes at this lambda");
    return psi(lam) - omega_psi_fstar(lam) / w * fv;
}

Complex moutard_psi_star(const MoutardSeed& seed, const LambdaField& psi_star,
                         const std::function<Complex(const SpectralParam&)>& omega_f_psistar,
                         const SpectralParam& lam) {
    const Complex w = seed.omega_ff(lam);
    const Complex fsv = seed.f_star(lam);
    if (std::abs(w) < kOmegaZeroTol * (1.0 + std::abs(seed.f(lam) * std::conj(fsv))))
        throw DivisionByZeroOmega("omega_{f,f*} vanishes at this lambda");
    return psi_star(lam) - omega_f_psistar(lam) / w * fsv;
}

ScenarioResult run_creation(const Energy& E, const Coupling& alpha, const AnnulusGrid& grid,
                            const std::vector<PhysicalPoint>& z_samples, double h_rel,
                            const QuadratureConfig& cfg, OmegaMode mode,
                            std::optional<double> c_ff_override) {
    return run_scenario(true, E, alpha, grid, z_samples, h_rel, cfg, mode, c_ff_override);
}

ScenarioResult run_annihilation(const Energy& E, const Coupling& alpha, const AnnulusGrid& grid,
                                const std::vector<PhysicalPoint>& z_samples, double h_rel,
                                const QuadratureConfig& cfg, OmegaMode mode,
                                std::optional<double> c_ff_override) {
    return run_scenario(false, E, alpha, grid, z_samples, h_rel, cfg, mode, c_ff_override);
}

double seed_tolerance(const AnnulusGrid& grid, double h_rel) {
    (void)grid;
    return 5000.0 * h_rel * h_rel + 1e-8;
}

ResidualReport verify_seed(const MoutardSeed& seed, const AnnulusGrid& grid, double h_rel) {
    LambdaField omega{[&](const SpectralParam& l) { return seed.omega_ff(l); }, "omega_ff"};
    ResidualReport rep;
    rep.h = h_rel;
    for (const SpectralParam& lam : grid.points()) {
        const double h = h_rel * lam.abs();
        if (!stencil_ok(lam, h, grid)) {
            ++rep.n_skipped;
            continue;
        }
        const Complex Bv = seed.B(lam);
        const Complex fv = seed.f(lam);
        const Complex fsv = seed.f_star(lam);
        const double scale = 1.0 + std::abs(fv * fsv);
        rep.add(lam.lambda(), std::abs(dbar_fd(seed.f, lam, h) - Bv * std::conj(fv)) / scale);
        rep.add(lam.lambda(),
                std::abs(dbar_fd(seed.f_star, lam, h) + std::conj(Bv) * std::conj(fsv)) / scale);
        rep.add(lam.lambda(), std::abs(d_fd(omega, lam, h) - fv * fsv) / scale);
        rep.add(lam.lambda(), std::abs(dbar_fd(omega, lam, h) + std::conj(fv * fsv)) / scale);
    }
    rep.finish();
    if (rep.n_points == 0)
        throw SeedInvalid("seed verification had no valid stencil points");
    if (rep.max_abs > seed_tolerance(grid, h_rel))
        throw SeedInvalid("seed fails its defining equations: normalized residual " +
                          std::to_string(rep.max_abs));
    return rep;
}

} // namespace moutard
