#include "moutard/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

namespace moutard {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Acceptance thresholds, shared with the summary blocks.
constexpr double kThrBesselRel = 1e-6;
constexpr double kThrRealness = 1e-8;
constexpr double kThrSymm = 1e-13;
constexpr double kThrRouteConsistency = 1e-13;
constexpr double kThrCreateB = 1e-10;
constexpr double kThrAnnihilateB = 1e-12;
constexpr double kThrOrder = 1.9;
constexpr double kThrPoleOrder = 0.1;
constexpr double kThrImagOmega = 1e-10;
constexpr double kDbarNoiseFloor = 1e-6;

int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("MOUTARD_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && static_cast<unsigned>(cap) < n)
            n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(n);
}

// Deterministic parallel map: slot i is written by exactly one worker.
void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(thread_budget(), std::max(1, n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<double> log_radii(const GridParams& g) {
    std::vector<double> out;
    const double l0 = std::log(g.r_min), l1 = std::log(g.r_max);
    for (int i = 0; i < g.n_radial; ++i) {
        const double t = g.n_radial == 1 ? 0.5 : static_cast<double>(i) / (g.n_radial - 1);
        out.push_back(std::exp(l0 + (l1 - l0) * t));
    }
    return out;
}

void add_check(OutputRecord& rec, const std::string& name, double value, double threshold,
               bool pass) {
    rec.checks.push_back(CheckLine{name, value, threshold, pass});
}

void add_check_le(OutputRecord& rec, const std::string& name, double value, double threshold) {
    add_check(rec, name, value, threshold, value <= threshold);
}

double fd_order(double coarse, double fine) {
    if (fine <= 0.0 || coarse <= 0.0) return 0.0;
    return std::log2(coarse / fine);
}

nlohmann::ordered_json summary_json(const OutputRecord& rec) {
    nlohmann::ordered_json s;
    s["command"] = rec.command;
    s["params"] = rec.params;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : rec.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["threshold"] = c.threshold;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    s["checks"] = checks;
    s["all_pass"] = rec.all_pass();
    return s;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool OutputRecord::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::vector<std::string> OutputRecord::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& t : tables) {
        const std::string path = dir + "/" + command + "_" + t.name + ".csv";
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot write " + path);
        f << t.header << "\n";
        for (const auto& row : t.rows)
            f << row << "\n";
        written.push_back(path);
    }
    const std::string spath = dir + "/" + command + "_summary.json";
    std::ofstream f(spath, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write " + spath);
    f << summary_json(*this).dump(2) << "\n";
    written.push_back(spath);
    return written;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    std::vector<std::string> errors;
    auto fail = [&](const std::string& m) { errors.push_back(m); };

    try {
        if (j.contains("energy")) cfg.energy = j.at("energy").get<double>();
        if (!(cfg.energy < 0.0)) fail("energy: must be strictly negative");

        if (j.contains("alpha")) {
            cfg.alpha = j.at("alpha").get<double>();
            if (*cfg.alpha == 0.0) fail("alpha: must be nonzero");
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (g.contains("r_min")) cfg.grid.r_min = g.at("r_min").get<double>();
            if (g.contains("r_max")) cfg.grid.r_max = g.at("r_max").get<double>();
            if (g.contains("n_radial")) cfg.grid.n_radial = g.at("n_radial").get<int>();
            if (g.contains("n_angular")) cfg.grid.n_angular = g.at("n_angular").get<int>();
            if (!(cfg.grid.r_min > 0.0 && cfg.grid.r_min < 1.0))
                fail("grid.r_min: must satisfy 0 < r_min < 1");
            if (!(cfg.grid.r_max > 1.0)) fail("grid.r_max: must exceed 1");
            if (cfg.grid.n_radial < 1 || cfg.grid.n_angular < 1)
                fail("grid.n_radial/n_angular: must be positive");
        }
        if (j.contains("z_samples")) {
            cfg.z_samples.clear();
            size_t idx = 0;
            for (const auto& e : j.at("z_samples")) {
                if (!e.is_array() || e.size() != 2) {
                    fail("z_samples[" + std::to_string(idx) + "]: expected [re, im]");
                } else {
                    const Complex z(e.at(0).get<double>(), e.at(1).get<double>());
                    if (std::abs(z) == 0.0)
                        fail("z_samples[" + std::to_string(idx) + "]: must be nonzero");
                    cfg.z_samples.push_back(z);
                }
                ++idx;
            }
            if (cfg.z_samples.empty()) fail("z_samples: must not be empty");
        }
        if (j.contains("fd_step")) {
            cfg.fd_step = j.at("fd_step").get<double>();
            if (!(cfg.fd_step > 0.0 && cfg.fd_step < 0.1))
                fail("fd_step: must lie in (0, 0.1)");
        }
        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            if (q.contains("rel_tol")) cfg.quadrature.rel_tol = q.at("rel_tol").get<double>();
            if (q.contains("abs_tol")) cfg.quadrature.abs_tol = q.at("abs_tol").get<double>();
            if (q.contains("max_subdivisions"))
                cfg.quadrature.max_subdivisions = q.at("max_subdivisions").get<int>();
            if (q.contains("radial_cutoff"))
                cfg.quadrature.radial_cutoff = q.at("radial_cutoff").get<double>();
            if (!(cfg.quadrature.rel_tol > 0.0)) fail("quadrature.rel_tol: must be positive");
            if (!(cfg.quadrature.abs_tol > 0.0)) fail("quadrature.abs_tol: must be positive");
            if (cfg.quadrature.max_subdivisions < 1)
                fail("quadrature.max_subdivisions: must be positive");
        }
        if (j.contains("omega_mode")) {
            const std::string m = j.at("omega_mode").get<std::string>();
            if (m == "closed_form")
                cfg.omega_mode = OmegaMode::ClosedForm;
            else if (m == "path_integrated")
                cfg.omega_mode = OmegaMode::PathIntegrated;
            else
                fail("omega_mode: expected closed_form or path_integrated");
        }
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("seed_overrides")) {
            const auto& s = j.at("seed_overrides");
            if (s.contains("c_ff")) cfg.c_ff_override = s.at("c_ff").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("json: ") + e.what());
    }

    if (!errors.empty()) {
        std::string msg = "invalid configuration: ";
        for (size_t i = 0; i < errors.size(); ++i)
            msg += (i ? "; " : "") + errors[i];
        throw ConfigError(msg);
    }
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["energy"] = energy;
    if (alpha) j["alpha"] = *alpha;
    j["grid"] = {{"r_min", grid.r_min},
                 {"r_max", grid.r_max},
                 {"n_radial", grid.n_radial},
                 {"n_angular", grid.n_angular}};
    nlohmann::ordered_json zs = nlohmann::ordered_json::array();
    for (const auto& z : z_samples)
        zs.push_back({z.real(), z.imag()});
    j["z_samples"] = zs;
    j["fd_step"] = fd_step;
    j["quadrature"] = {{"rel_tol", quadrature.rel_tol},
                       {"abs_tol", quadrature.abs_tol},
                       {"max_subdivisions", quadrature.max_subdivisions},
                       {"radial_cutoff", quadrature.radial_cutoff}};
    j["omega_mode"] =
        omega_mode == OmegaMode::ClosedForm ? "closed_form" : "path_integrated";
    j["output_dir"] = output_dir;
    if (c_ff_override) j["seed_overrides"] = {{"c_ff", *c_ff_override}};
    return j;
}

OutputRecord cmd_green(const RunConfig& cfg) {
    const Energy E(cfg.energy);
    OutputRecord rec;
    rec.command = "green";
    rec.params = cfg.to_json();

    std::vector<double> radii = log_radii(cfg.grid);
    // The unit circle is always sampled: it carries the Bessel cross-check.
    if (std::none_of(radii.begin(), radii.end(),
                     [](double r) { return std::abs(r - 1.0) <= 1e-12; }))
        radii.push_back(1.0);
    std::sort(radii.begin(), radii.end());

    struct Row {
        Complex lam;
        Complex z;
        GreenEval direct, shift;
    };
    std::vector<Row> rows;
    const int n_ang = std::max(1, cfg.grid.n_angular / 4);
    for (double r : radii)
        for (int a = 0; a < n_ang; ++a)
            for (const Complex& z : cfg.z_samples)
                rows.push_back(Row{std::polar(r, 2.0 * kPi * a / n_ang), z, {}, {}});

    std::string first_error;
    std::mutex err_mutex;
    parallel_for(static_cast<int>(rows.size()), [&](int i) {
        try {
            Row& row = rows[i];
            const SpectralParam lam(row.lam);
            const PhysicalPoint z(row.z);
            row.direct = green_direct(z, lam, E, cfg.quadrature);
            row.shift = green_contour_shift(z, lam, E, cfg.quadrature);
        } catch (const Error& e) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (first_error.empty()) first_error = e.what();
        }
    });
    if (!first_error.empty())
        throw NonConvergence(first_error);

    OutputTable table;
    table.name = "table";
    table.header = "re_lambda,im_lambda,abs_z,arg_z,g_direct,g_shift,err_direct,err_shift,agree";
    OutputTable bessel;
    bessel.name = "bessel";
    bessel.header = "re_lambda,im_lambda,abs_z,arg_z,g_direct,g_shift,bessel_ref,"
                    "rel_err_direct,rel_err_shift";

    double realness_max = 0.0;
    double bessel_max = 0.0;
    bool agree_all = true;
    for (const Row& row : rows) {
        const double diff = std::abs(row.direct.value - row.shift.value);
        const bool agree = diff <= row.direct.est_error + row.shift.est_error + 1e-14;
        agree_all = agree_all && agree;
        realness_max = std::max(realness_max,
                                row.direct.imag_abs / (1.0 + std::abs(row.direct.value)));
        std::string line;
        line += format_double(row.lam.real());
        line += ',' + format_double(row.lam.imag());
        line += ',' + format_double(std::abs(row.z));
        line += ',' + format_double(std::arg(row.z));
        line += ',' + format_double(row.direct.value);
        line += ',' + format_double(row.shift.value);
        line += ',' + format_double(row.direct.est_error);
        line += ',' + format_double(row.shift.est_error);
        line += agree ? ",1" : ",0";
        table.rows.push_back(line);

        if (std::abs(std::abs(row.lam) - 1.0) <= 1e-12) {
            const double ref =
                -std::cyl_bessel_k(0.0, E.sqrt_abs() * std::abs(row.z)) / (2.0 * kPi);
            const double rd = std::abs(row.direct.value - ref) / std::abs(ref);
            const double rs = std::abs(row.shift.value - ref) / std::abs(ref);
            bessel_max = std::max({bessel_max, rd, rs});
            std::string bl;
            bl += format_double(row.lam.real());
            bl += ',' + format_double(row.lam.imag());
            bl += ',' + format_double(std::abs(row.z));
            bl += ',' + format_double(std::arg(row.z));
            bl += ',' + format_double(row.direct.value);
            bl += ',' + format_double(row.shift.value);
            bl += ',' + format_double(ref);
            bl += ',' + format_double(rd);
            bl += ',' + format_double(rs);
            bessel.rows.push_back(bl);
        }
    }
    rec.tables.push_back(table);
    rec.tables.push_back(bessel);
    add_check(rec, "cross_method_agreement", agree_all ? 1.0 : 0.0, 1.0, agree_all);
    add_check_le(rec, "realness_max_rel", realness_max, kThrRealness);
    add_check_le(rec, "bessel_max_rel_err", bessel_max, kThrBesselRel);
    return rec;
}

OutputRecord cmd_spectrum(const RunConfig& cfg) {
    const Energy E(cfg.energy);
    const Coupling alpha = cfg.require_alpha();
    OutputRecord rec;
    rec.command = "spectrum";
    rec.params = cfg.to_json();

    const SingularSet sing = singular_circles(E, alpha);
    const AnnulusGrid grid = build_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.n_radial,
                                        cfg.grid.n_angular, E, alpha);

    OutputTable prof;
    prof.name = "profile";
    prof.header = "radius,b,a,B_abs,denom";
    const double ray = kPi / 6.0;
    for (double r : grid.radii()) {
        const SpectralParam lam(std::polar(r, ray));
        std::string line = format_double(r);
        line += ',' + format_double(b_point(lam, E, alpha));
        line += ',' + format_double(a_point(lam, E, alpha));
        line += ',' + format_double(std::abs(B_point(lam, E, alpha)));
        line += ',' + format_double(denom(lam, E, alpha));
        prof.rows.push_back(line);
    }
    rec.tables.push_back(prof);

    OutputTable circles;
    circles.name = "singular";
    circles.header = "r_singular,pole_order";
    double worst_order_err = 0.0;
    for (double rs : sing.radii) {
        // Log-log fit of |B| against the distance to the circle along a ray.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double d : {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4}) {
            for (double side : {1.0, -1.0}) {
                const double r = rs * (1.0 + side * d);
                const SpectralParam lam(std::polar(r, ray));
                const double x = std::log(std::abs(r - rs));
                const double y = std::log(std::abs(B_point(lam, E, alpha)));
                sx += x; sy += y; sxx += x * x; sxy += x * y;
                ++n;
            }
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double order = -slope;
        worst_order_err = std::max(worst_order_err, std::abs(order - 1.0));
        circles.rows.push_back(format_double(rs) + ',' + format_double(order));
    }
    rec.tables.push_back(circles);

    add_check(rec, "threshold_energy_mag", sing.threshold_energy_mag,
              sing.threshold_energy_mag, true);
    add_check(rec, "n_singular_radii", static_cast<double>(sing.radii.size()),
              static_cast<double>(sing.radii.size()), true);
    if (!sing.radii.empty())
        add_check_le(rec, "pole_order_max_dev", worst_order_err, kThrPoleOrder);
    else
        add_check(rec, "regular", 1.0, 1.0, true);
    return rec;
}

namespace {

// The point-potential triple as lambda-fields at fixed z.
struct PointFields {
    LambdaField psi, psi_star, B, b, a;
};

PointFields point_fields(const PhysicalPoint& z, const Energy& E, const Coupling& alpha,
                         const QuadratureConfig& quad) {
    PointFields out;
    out.psi = LambdaField{
        [=](const SpectralParam& l) { return psi_point(z, l, E, alpha, quad); }, "psi_point"};
    out.psi_star = LambdaField{
        [=](const SpectralParam& l) { return psi_star_point(z, l, E, alpha, quad); },
        "psi_star_point"};
    out.B = LambdaField{[=](const SpectralParam& l) { return B_point(l, E, alpha); }, "B_point"};
    out.b = LambdaField{
        [=](const SpectralParam& l) { return Complex(b_point(l, E, alpha), 0.0); }, "b_point"};
    out.a = LambdaField{
        [=](const SpectralParam& l) { return Complex(a_point(l, E, alpha), 0.0); }, "a_point"};
    return out;
}

OutputRecord scenario_record(const RunConfig& cfg, bool creation) {
    const Energy E(cfg.energy);
    const Coupling alpha = cfg.require_alpha();
    OutputRecord rec;
    rec.command = creation ? "create" : "annihilate";
    rec.params = cfg.to_json();

    const AnnulusGrid grid = build_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.n_radial,
                                        cfg.grid.n_angular, E, alpha);
    std::vector<PhysicalPoint> zs;
    for (const Complex& z : cfg.z_samples)
        zs.emplace_back(z);

    auto run = [&](double h) {
        return creation ? run_creation(E, alpha, grid, zs, h, cfg.quadrature, cfg.omega_mode,
                                       cfg.c_ff_override)
                        : run_annihilation(E, alpha, grid, zs, h, cfg.quadrature, cfg.omega_mode,
                                           cfg.c_ff_override);
    };
    const ScenarioResult res = run(cfg.fd_step);
    // Convergence order of the transformed-pair residual.
    const ScenarioResult res2 = run(cfg.fd_step * 2.0);
    const ScenarioResult res4 = run(cfg.fd_step * 4.0);

    OutputTable table;
    table.name = "residuals";
    table.header = "metric,max_abs,rms,n_points,n_skipped";
    auto push_report = [&table](const std::string& name, const ResidualReport& r) {
        table.rows.push_back(name + ',' + format_double(r.max_abs) + ',' + format_double(r.rms) +
                             ',' + std::to_string(r.n_points) + ',' + std::to_string(r.n_skipped));
    };
    push_report("B", res.residual_B);
    push_report("psi", res.residual_psi);
    push_report("psi_star", res.residual_psi_star);
    push_report("transformed_dbar_h", res.residual_transformed_dbar);
    push_report("transformed_dbar_2h", res2.residual_transformed_dbar);
    push_report("transformed_dbar_4h", res4.residual_transformed_dbar);
    rec.tables.push_back(table);

    const double green_tol = 2.0 * (res.green_err_max + cfg.quadrature.abs_tol) + 1e-13;
    if (creation) {
        add_check_le(rec, "b_tilde_vs_point_max_abs", res.residual_B.max_abs,
                     kThrCreateB * (1.0 + res.b_scale));
    } else {
        add_check_le(rec, "b_tilde_max_abs", res.residual_B.max_abs,
                     kThrAnnihilateB * std::max(1.0, res.b_scale));
    }
    add_check_le(rec, "psi_max_abs", res.residual_psi.max_abs, green_tol);
    add_check_le(rec, "psi_star_max_abs", res.residual_psi_star.max_abs, green_tol);

    const double ord1 = fd_order(res4.residual_transformed_dbar.max_abs,
                                 res2.residual_transformed_dbar.max_abs);
    const double ord2 = fd_order(res2.residual_transformed_dbar.max_abs,
                                 res.residual_transformed_dbar.max_abs);
    const double order = std::min(ord1, ord2);
    const bool at_floor = res.residual_transformed_dbar.max_abs <= kDbarNoiseFloor;
    add_check(rec, "transformed_dbar_order", order, kThrOrder, order >= kThrOrder || at_floor);
    return rec;
}

} // namespace

OutputRecord cmd_create(const RunConfig& cfg) {
    return scenario_record(cfg, true);
}

OutputRecord cmd_annihilate(const RunConfig& cfg) {
    return scenario_record(cfg, false);
}

OutputRecord cmd_check(const RunConfig& cfg, CheckKind which) {
    const Energy E(cfg.energy);
    const Coupling alpha = cfg.require_alpha();
    OutputRecord rec;
    rec.command = "check";
    rec.params = cfg.to_json();
    rec.params["which"] = [&] {
        switch (which) {
        case CheckKind::Dbar: return "dbar";
        case CheckKind::Symmetry: return "symmetry";
        case CheckKind::Omega: return "omega";
        default: return "seed";
        }
    }();

    const AnnulusGrid grid = build_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.n_radial,
                                        cfg.grid.n_angular, E, alpha);
    const PhysicalPoint z(cfg.z_samples.front());
    const PointFields pf = point_fields(z, E, alpha, cfg.quadrature);

    switch (which) {
    case CheckKind::Dbar: {
        OutputTable t;
        t.name = "orders";
        t.header = "h_rel,psi_max,psi_rms,psi_star_max,psi_star_rms";
        double prev_psi = 0.0, prev_star = 0.0;
        double ord_psi = 0.0, ord_star = 0.0;
        double finest_psi = 0.0, finest_star = 0.0;
        const double hs[3] = {4.0 * cfg.fd_step, 2.0 * cfg.fd_step, cfg.fd_step};
        for (int i = 0; i < 3; ++i) {
            auto [r1, r2] = check_dbar_pair(pf.psi, pf.psi_star, pf.B, grid, hs[i]);
            t.rows.push_back(format_double(hs[i]) + ',' + format_double(r1.max_abs) + ',' +
                             format_double(r1.rms) + ',' + format_double(r2.max_abs) + ',' +
                             format_double(r2.rms));
            if (i > 0) {
                ord_psi = fd_order(prev_psi, r1.max_abs);
                ord_star = fd_order(prev_star, r2.max_abs);
            }
            prev_psi = r1.max_abs;
            prev_star = r2.max_abs;
            finest_psi = r1.max_abs;
            finest_star = r2.max_abs;
        }
        rec.tables.push_back(t);
        add_check(rec, "convergence_order_psi", ord_psi, kThrOrder,
                  ord_psi >= kThrOrder || finest_psi <= kDbarNoiseFloor);
        add_check(rec, "convergence_order_psi_star", ord_star, kThrOrder,
                  ord_star >= kThrOrder || finest_star <= kDbarNoiseFloor);
        break;
    }
    case CheckKind::Symmetry: {
        const ResidualReport rB = check_symmetries_B(pf.B, grid);
        const ResidualReport rb = check_symmetries_b(pf.b, grid);
        double scaleB = 0.0;
        for (const SpectralParam& l : grid.points())
            scaleB = std::max(scaleB, std::abs(B_point(l, E, alpha)));
        OutputTable t;
        t.name = "residuals";
        t.header = "identity,max_abs,rms,n_points";
        t.rows.push_back("B," + format_double(rB.max_abs) + ',' + format_double(rB.rms) + ',' +
                         std::to_string(rB.n_points));
        t.rows.push_back("b," + format_double(rb.max_abs) + ',' + format_double(rb.rms) + ',' +
                         std::to_string(rb.n_points));
        rec.tables.push_back(t);
        add_check_le(rec, "B_symmetry_max", rB.max_abs, kThrSymm * std::max(1.0, scaleB));
        add_check_le(rec, "b_symmetry_max", rb.max_abs, kThrSymm * std::max(1.0, scaleB));

        double route_max = 0.0;
        for (const SpectralParam& l : grid.points()) {
            const Complex b1 = B_point(l, E, alpha);
            const Complex b2 = B_point_scattering_route(l, E, alpha);
            route_max = std::max(route_max, std::abs(b1 - b2) / std::abs(b1));
        }
        add_check_le(rec, "route_consistency_rel", route_max, kThrRouteConsistency);
        break;
    }
    case CheckKind::Omega: {
        const MoutardSeed vac = vacuum_seed(E, alpha);
        const MoutardSeed pts = point_seed(E, alpha);
        LambdaField plane{[=](const SpectralParam& l) { return plane_wave(z, l, E); }, "pw"};
        LambdaField plane_star{[=](const SpectralParam& l) {
                                   return Complex(0.0, 1.0) / l.lambda() *
                                          plane_wave_inverse(z, l, E);
                               },
                               "pw*"};
        struct KindSpec {
            const char* name;
            OmegaClosedForm form;
            LambdaField psi, psi_star;
        };
        const std::vector<KindSpec> kinds = {
            {"ff_creation", creation_form(OmegaKind::FF_Creation, alpha), vac.f, vac.f_star},
            {"psif_creation", creation_form(OmegaKind::PsiF_Creation, alpha), plane, vac.f_star},
            {"fpsistar_creation", creation_form(OmegaKind::FPsiStar_Creation, alpha), vac.f,
             plane_star},
            {"ff_annihilation", annihilation_form(OmegaKind::FF_Annihilation), pts.f, pts.f_star},
            {"psif_annihilation", annihilation_form(OmegaKind::PsiF_Annihilation), pf.psi,
             pts.f_star},
            {"fpsistar_annihilation", annihilation_form(OmegaKind::FPsiStar_Annihilation), pts.f,
             pf.psi_star}};

        OutputTable t;
        t.name = "kinds";
        t.header = "kind,imag_violation_max,grad_order,grad_residual_finest";
        double imag_worst = 0.0, order_worst = 1e9;
        bool orders_ok = true;
        for (const auto& k : kinds) {
            double imag_max = 0.0;
            for (const SpectralParam& l : grid.points()) {
                const Complex w = omega_closed(k.form, z, l, E, alpha, cfg.quadrature);
                imag_max = std::max(imag_max, std::abs(w.real()) / (1.0 + std::abs(w)));
            }
            const ResidualReport g2 = check_omega_gradient(k.form, z, E, alpha, k.psi, k.psi_star,
                                                           grid, 2.0 * cfg.fd_step,
                                                           cfg.quadrature);
            const ResidualReport g1 = check_omega_gradient(k.form, z, E, alpha, k.psi, k.psi_star,
                                                           grid, cfg.fd_step, cfg.quadrature);
            const double order = fd_order(g2.max_abs, g1.max_abs);
            const bool ok = order >= kThrOrder || g1.max_abs <= kDbarNoiseFloor;
            orders_ok = orders_ok && ok;
            imag_worst = std::max(imag_worst, imag_max);
            order_worst = std::min(order_worst, order);
            t.rows.push_back(std::string(k.name) + ',' + format_double(imag_max) + ',' +
                             format_double(order) + ',' + format_double(g1.max_abs));
        }
        rec.tables.push_back(t);
        add_check_le(rec, "omega_imaginarity_max", imag_worst, kThrImagOmega);
        add_check(rec, "omega_gradient_order_min", order_worst, kThrOrder, orders_ok);

        if (cfg.omega_mode == OmegaMode::PathIntegrated) {
            // Increment test within one ring plus a closed loop around it.
            const SpectralParam a(Complex(2.0, 0.0));
            const SpectralParam b(std::polar(2.5, 0.8));
            IntegrationPath seg;
            seg.waypoints = {a, SpectralParam(Complex(2.5, 0.0)), b};
            seg.base_value = Complex(0.0, 0.0);
            double inc_worst = 0.0;
            for (const auto& k : kinds) {
                const Complex d_path = omega_integrate(k.psi, k.psi_star, seg, 8,
                                                       grid.exclusions, cfg.quadrature);
                const Complex d_closed =
                    omega_closed(k.form, z, b, E, alpha, cfg.quadrature) -
                    omega_closed(k.form, z, a, E, alpha, cfg.quadrature);
                inc_worst = std::max(inc_worst, std::abs(d_path - d_closed));
            }
            add_check_le(rec, "path_increment_max_err", inc_worst, 1e-6);

            IntegrationPath loop;
            const int n_loop = 24;
            for (int i = 0; i <= n_loop; ++i)
                loop.waypoints.emplace_back(std::polar(2.0, 2.0 * kPi * i / n_loop));
            const Complex loop_val = omega_integrate(kinds[0].psi, kinds[0].psi_star, loop, 4,
                                                     grid.exclusions, cfg.quadrature);
            add_check_le(rec, "closed_loop_residual", std::abs(loop_val),
                         std::max(1e-8, 10.0 * cfg.quadrature.abs_tol));
        }
        break;
    }
    case CheckKind::Seed: {
        OutputTable t;
        t.name = "seeds";
        t.header = "seed,normalized_max,rms,n_points,pass";
        bool all_ok = true;
        double worst = 0.0;
        for (const auto& [name, seed] :
             {std::pair<std::string, MoutardSeed>{"vacuum", vacuum_seed(E, alpha)},
              std::pair<std::string, MoutardSeed>{"point", point_seed(E, alpha)}}) {
            try {
                const ResidualReport r = verify_seed(seed, grid, cfg.fd_step);
                worst = std::max(worst, r.max_abs);
                t.rows.push_back(name + ',' + format_double(r.max_abs) + ',' +
                                 format_double(r.rms) + ',' + std::to_string(r.n_points) +
                                 ",1");
            } catch (const SeedInvalid&) {
                all_ok = false;
                t.rows.push_back(name + ",nan,nan,0,0");
            }
        }
        rec.tables.push_back(t);
        add_check(rec, "seeds_valid", all_ok ? 1.0 : 0.0, 1.0, all_ok);
        add_check_le(rec, "seed_residual_max", worst, seed_tolerance(grid, cfg.fd_step));
        break;
    }
    }
    return rec;
}

namespace {

void print_summary(const OutputRecord& rec, const std::vector<std::string>& files) {
    for (const auto& c : rec.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << rec.command << ":" << c.name
                  << " value=" << format_double(c.value)
                  << " threshold=" << format_double(c.threshold) << "\n";
    }
    for (const auto& f : files)
        std::cout << "wrote " << f << "\n";
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Fixed-negative-energy inverse-scattering toolkit: Faddeev Green functions, "
                 "point-potential spectral data and Moutard-type transforms"};
    app.require_subcommand(1);

    std::string config_path;
    std::string which = "dbar";
    std::optional<double> energy_override, alpha_override, fd_override;
    std::optional<std::string> out_override;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--energy", [&](const std::vector<std::string>& v) {
            energy_override = std::stod(v.at(0));
            return true;
        }, "Energy E < 0");
        sub->add_option("--alpha", [&](const std::vector<std::string>& v) {
            alpha_override = std::stod(v.at(0));
            return true;
        }, "Point-potential coupling (nonzero)");
        sub->add_option("--fd-step", [&](const std::vector<std::string>& v) {
            fd_override = std::stod(v.at(0));
            return true;
        }, "Relative finite-difference step");
        sub->add_option("--out", [&](const std::vector<std::string>& v) {
            out_override = v.at(0);
            return true;
        }, "Output directory");
    };

    CLI::App* green = app.add_subcommand("green", "Cross-validated Green function tables");
    CLI::App* spectrum = app.add_subcommand("spectrum", "Spectral data profiles and singular circles");
    CLI::App* check = app.add_subcommand("check", "Residual checkers (dbar, symmetry, omega, seed)");
    CLI::App* create = app.add_subcommand("create", "Creation scenario: vacuum -> point potential");
    CLI::App* annihilate =
        app.add_subcommand("annihilate", "Annihilation scenario: point potential -> vacuum");
    for (CLI::App* sub : {green, spectrum, check, create, annihilate})
        add_common(sub);
    check->add_option("--which", which, "dbar|symmetry|omega|seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::from_json_file(config_path);
        if (energy_override) cfg.energy = *energy_override;
        if (alpha_override) cfg.alpha = *alpha_override;
        if (fd_override) cfg.fd_step = *fd_override;
        if (out_override) cfg.output_dir = *out_override;
        // Re-validate after overrides.
        cfg = RunConfig::from_json(cfg.to_json());

        OutputRecord rec;
        if (green->parsed()) {
            rec = cmd_green(cfg);
        } else if (spectrum->parsed()) {
            rec = cmd_spectrum(cfg);
        } else if (check->parsed()) {
            CheckKind kind;
            if (which == "dbar") kind = CheckKind::Dbar;
            else if (which == "symmetry") kind = CheckKind::Symmetry;
            else if (which == "omega") kind = CheckKind::Omega;
            else if (which == "seed") kind = CheckKind::Seed;
            else throw ConfigError("check --which: expected dbar|symmetry|omega|seed");
            rec = cmd_check(cfg, kind);
        } else if (create->parsed()) {
            rec = cmd_create(cfg);
        } else {
            rec = cmd_annihilate(cfg);
        }
        const auto files = rec.write(cfg.output_dir);
        print_summary(rec, files);
        return rec.all_pass() ? 0 : 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace moutard
