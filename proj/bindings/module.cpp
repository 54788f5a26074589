#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moutard/moutard.hpp"
#include "moutard/report.hpp"

namespace py = pybind11;
using namespace moutard;

namespace {

SpectralParam to_lam(Complex l) { return SpectralParam(l); }

LambdaField field_from_py(const std::function<Complex(Complex)>& f, const std::string& label) {
    return LambdaField{[f](const SpectralParam& l) { return f(l.lambda()); }, label};
}

} // namespace

PYBIND11_MODULE(_moutard, m) {
    m.doc() = "Faddeev Green functions, point-potential dbar spectral data and "
              "Moutard-type transforms at fixed negative energy";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<NonConvergence>(m, "NonConvergence");
    py::register_exception<SingularPoint>(m, "SingularPoint");
    py::register_exception<BoundaryError>(m, "BoundaryError");
    py::register_exception<StencilError>(m, "StencilError");
    py::register_exception<PathError>(m, "PathError");
    py::register_exception<ConfigError>(m, "ConfigErrorX");
    py::register_exception<SeedInvalid>(m, "SeedInvalid");
    py::register_exception<DivisionByZeroOmega>(m, "DivisionByZeroOmega");

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
        .def_readwrite("radial_cutoff", &QuadratureConfig::radial_cutoff);

    py::enum_<GreenMethod>(m, "GreenMethod")
        .value("DirectQuadrature", GreenMethod::DirectQuadrature)
        .value("ContourShift", GreenMethod::ContourShift);

    py::class_<GreenEval>(m, "GreenEval")
        .def_readonly("value", &GreenEval::value)
        .def_readonly("method", &GreenEval::method)
        .def_readonly("est_error", &GreenEval::est_error)
        .def_readonly("imag_abs", &GreenEval::imag_abs)
        .def("__repr__", [](const GreenEval& g) {
            return "GreenEval(value=" + std::to_string(g.value) +
                   ", est_error=" + std::to_string(g.est_error) + ")";
        });

    py::class_<SingularSet>(m, "SingularSet")
        .def_readonly("radii", &SingularSet::radii)
        .def_readonly("threshold_energy_mag", &SingularSet::threshold_energy_mag)
        .def("empty", &SingularSet::empty);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("max_abs", &ResidualReport::max_abs)
        .def_readonly("rms", &ResidualReport::rms)
        .def_readonly("n_points", &ResidualReport::n_points)
        .def_readonly("n_skipped", &ResidualReport::n_skipped)
        .def_readonly("h", &ResidualReport::h);

    py::class_<AnnulusGrid>(m, "AnnulusGrid")
        .def_readonly("r_min", &AnnulusGrid::r_min)
        .def_readonly("r_max", &AnnulusGrid::r_max)
        .def_readonly("n_radial", &AnnulusGrid::n_radial)
        .def_readonly("n_angular", &AnnulusGrid::n_angular)
        .def("radii", &AnnulusGrid::radii)
        .def("excluded", &AnnulusGrid::excluded);

    py::class_<ScenarioResult>(m, "ScenarioResult")
        .def_readonly("residual_B", &ScenarioResult::residual_B)
        .def_readonly("residual_psi", &ScenarioResult::residual_psi)
        .def_readonly("residual_psi_star", &ScenarioResult::residual_psi_star)
        .def_readonly("residual_transformed_dbar", &ScenarioResult::residual_transformed_dbar)
        .def_readonly("energy", &ScenarioResult::energy)
        .def_readonly("alpha", &ScenarioResult::alpha)
        .def_readonly("b_scale", &ScenarioResult::b_scale)
        .def_readonly("green_err_max", &ScenarioResult::green_err_max);

    m.def("k_from_lambda", [](double E, Complex lam) {
        const KVector k = k_from_lambda(Energy(E), to_lam(lam));
        return std::make_pair(k.k1, k.k2);
    }, py::arg("energy"), py::arg("lam"));

    m.def("re_im_norm", [](double E, Complex lam) {
        return re_im_norm(k_from_lambda(Energy(E), to_lam(lam)));
    }, py::arg("energy"), py::arg("lam"));

    m.def("involutions", [](Complex lam) {
        const auto [a, b] = involutions(to_lam(lam));
        return std::make_pair(a.lambda(), b.lambda());
    }, py::arg("lam"));

    m.def("plane_wave", [](Complex z, Complex lam, double E) {
        return plane_wave(PhysicalPoint(z), to_lam(lam), Energy(E));
    }, py::arg("z"), py::arg("lam"), py::arg("energy"));

    m.def("green_direct", [](Complex z, Complex lam, double E, const QuadratureConfig& cfg) {
        return green_direct(PhysicalPoint(z), to_lam(lam), Energy(E), cfg);
    }, py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("cfg") = QuadratureConfig{});

    m.def("green_contour_shift", [](Complex z, Complex lam, double E, const QuadratureConfig& cfg) {
        return green_contour_shift(PhysicalPoint(z), to_lam(lam), Energy(E), cfg);
    }, py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("cfg") = QuadratureConfig{});

    m.def("green_log_coeff", [](Complex lam, double E) {
        return green_log_coeff(to_lam(lam), Energy(E));
    }, py::arg("lam"), py::arg("energy"));

    m.def("check_dbar_green", [](Complex z, Complex lam, double E, double h) {
        return check_dbar_green(PhysicalPoint(z), to_lam(lam), Energy(E), h);
    }, py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("h"));

    m.def("denom", [](Complex lam, double E, double alpha) {
        return denom(to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("b_point", [](Complex lam, double E, double alpha) {
        return b_point(to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("B_point", [](Complex lam, double E, double alpha) {
        return B_point(to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("a_point", [](Complex lam, double E, double alpha) {
        return a_point(to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("psi_point", [](Complex z, Complex lam, double E, double alpha) {
        return psi_point(PhysicalPoint(z), to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("psi_star_point", [](Complex z, Complex lam, double E, double alpha) {
        return psi_star_point(PhysicalPoint(z), to_lam(lam), Energy(E), Coupling(alpha));
    }, py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("alpha"));

    m.def("singular_circles", [](double E, double alpha) {
        return singular_circles(Energy(E), Coupling(alpha));
    }, py::arg("energy"), py::arg("alpha"));

    m.def("build_grid", [](double r_min, double r_max, int n_radial, int n_angular, double E,
                           double alpha) {
        return build_grid(r_min, r_max, n_radial, n_angular, Energy(E), Coupling(alpha));
    }, py::arg("r_min"), py::arg("r_max"), py::arg("n_radial"), py::arg("n_angular"),
       py::arg("energy"), py::arg("alpha"));

    m.def("dbar_fd", [](const std::function<Complex(Complex)>& f, Complex lam, double h) {
        return dbar_fd(field_from_py(f, "py"), to_lam(lam), h);
    }, py::arg("field"), py::arg("lam"), py::arg("h"));

    py::enum_<OmegaKind>(m, "OmegaKind")
        .value("FF_Creation", OmegaKind::FF_Creation)
        .value("PsiF_Creation", OmegaKind::PsiF_Creation)
        .value("FPsiStar_Creation", OmegaKind::FPsiStar_Creation)
        .value("FF_Annihilation", OmegaKind::FF_Annihilation)
        .value("PsiF_Annihilation", OmegaKind::PsiF_Annihilation)
        .value("FPsiStar_Annihilation", OmegaKind::FPsiStar_Annihilation);

    m.def("omega_closed", [](OmegaKind kind, Complex z, Complex lam, double E, double alpha,
                             bool creation_constants) {
        const Coupling a(alpha);
        const OmegaClosedForm form =
            creation_constants ? creation_form(kind, a) : annihilation_form(kind);
        return omega_closed(form, PhysicalPoint(z), to_lam(lam), Energy(E), a);
    }, py::arg("kind"), py::arg("z"), py::arg("lam"), py::arg("energy"), py::arg("alpha"),
       py::arg("creation_constants"));

    py::enum_<OmegaMode>(m, "OmegaMode")
        .value("ClosedForm", OmegaMode::ClosedForm)
        .value("PathIntegrated", OmegaMode::PathIntegrated);

    m.def("run_creation", [](double E, double alpha, const AnnulusGrid& grid,
                             const std::vector<Complex>& zs, double h) {
        std::vector<PhysicalPoint> pts;
        for (Complex z : zs) pts.emplace_back(z);
        return run_creation(Energy(E), Coupling(alpha), grid, pts, h);
    }, py::arg("energy"), py::arg("alpha"), py::arg("grid"), py::arg("z_samples"),
       py::arg("h") = 1e-3);

    m.def("run_annihilation", [](double E, double alpha, const AnnulusGrid& grid,
                                 const std::vector<Complex>& zs, double h) {
        std::vector<PhysicalPoint> pts;
        for (Complex z : zs) pts.emplace_back(z);
        return run_annihilation(Energy(E), Coupling(alpha), grid, pts, h);
    }, py::arg("energy"), py::arg("alpha"), py::arg("grid"), py::arg("z_samples"),
       py::arg("h") = 1e-3);

    m.attr("__version__") = "0.1.0";
}
