#include "symm/curve.hpp"
#include "symm/errors.hpp"
#include "symm/fourier.hpp"
#include "symm/harness.hpp"
#include "symm/operator.hpp"
#include "symm/solvers.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace symm;

namespace {

FourierVector fourier_from_array(const Eigen::VectorXcd& coeffs) {
    if (coeffs.size() % 2 == 0) {
        throw DomainError("coefficient array must have odd length 2M+1");
    }
    return FourierVector::from_eigen(coeffs);
}

py::dict record_to_dict(const ExperimentRecord& r) {
    py::dict d;
    d["method"] = std::string(to_string(r.method));
    d["n"] = r.n;
    d["delta"] = r.delta;
    d["value_kind"] = std::string(to_string(r.value_kind));
    d["value"] = r.value;
    d["seed"] = r.seed;
    return d;
}

py::dict study_to_dict(const StudyResult& result) {
    py::list records;
    for (const auto& r : result.records) records.append(record_to_dict(r));
    py::list failures;
    for (const auto& f : result.failures) {
        failures.append(py::dict(py::arg("method") = std::string(to_string(f.method)), py::arg("n") = f.n,
                                 py::arg("delta") = f.delta, py::arg("seed") = f.seed,
                                 py::arg("message") = f.message));
    }
    py::dict d;
    d["records"] = records;
    d["failures"] = failures;
    d["M"] = result.M;
    d["m"] = result.m;
    d["max_tail_fraction"] = result.max_tail_fraction;
    return d;
}

}  // namespace

PYBIND11_MODULE(_symm_pg, m) {
    m.doc() = "Petrov-Galerkin solvers for Symm's integral equation in the trigonometric basis.";

    auto base = py::register_exception<Error>(m, "SymmError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InvalidCurveError>(m, "InvalidCurveError", base.ptr());
    py::register_exception<AliasingError>(m, "AliasingError", base.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<SingularSystemError>(m, "SingularSystemError", base.ptr());

    // curve
    py::class_<BoundaryCurve>(m, "BoundaryCurve")
        .def_static("disc", &BoundaryCurve::disc, py::arg("radius"))
        .def_static("ellipse", &BoundaryCurve::ellipse, py::arg("ax"), py::arg("ay"))
        .def_static("trig", &BoundaryCurve::trig, py::arg("a_coeffs"), py::arg("b_coeffs"))
        .def("eval", &BoundaryCurve::eval, py::arg("s"), py::arg("order") = 0);

    py::class_<DiagonalLimits>(m, "DiagonalLimits")
        .def_readonly("k_diag", &DiagonalLimits::k_diag)
        .def_readonly("k_t_limit", &DiagonalLimits::k_t_limit)
        .def_readonly("k_tt_limit", &DiagonalLimits::k_tt_limit);

    py::class_<RegularityReport>(m, "RegularityReport")
        .def_readonly("min_speed", &RegularityReport::min_speed)
        .def_readonly("injectivity_scale_ok", &RegularityReport::injectivity_scale_ok)
        .def_readonly("suggested_center", &RegularityReport::suggested_center);

    m.def("check_regularity", &check_regularity, py::arg("curve"), py::arg("grid_size") = 256);
    m.def("smooth_kernel", &smooth_kernel, py::arg("curve"), py::arg("t"), py::arg("s"));
    m.def("smooth_kernel_diagonal_derivatives", &smooth_kernel_diagonal_derivatives, py::arg("curve"),
          py::arg("t"));
    m.def("diagonal_finite_differences", &diagonal_finite_differences, py::arg("curve"), py::arg("t"),
          py::arg("h"));

    // fourier
    py::class_<FourierVector>(m, "FourierVector")
        .def(py::init<int>(), py::arg("max_index"))
        .def(py::init(&fourier_from_array), py::arg("coeffs"))
        .def_static("mode", &FourierVector::mode, py::arg("k"), py::arg("value") = Complex(1.0),
                    py::arg("max_index") = 0)
        .def_property_readonly("max_index", &FourierVector::max_index)
        .def_property_readonly("coeffs", &FourierVector::to_eigen)
        .def("coeff", &FourierVector::coeff, py::arg("k"))
        .def("__getitem__", &FourierVector::coeff)
        .def("__len__", &FourierVector::size)
        .def("resized", &FourierVector::resized, py::arg("max_index"))
        .def("is_real", &FourierVector::is_real, py::arg("tol") = 1e-12)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__repr__", [](const FourierVector& v) {
            return "FourierVector(max_index=" + std::to_string(v.max_index()) + ")";
        });

    m.def("sobolev_norm", [](const FourierVector& v, double r) { return sobolev_norm(v, SobolevIndex(r)); },
          py::arg("v"), py::arg("r"));
    m.def("sobolev_inner",
          [](const FourierVector& x, const FourierVector& y, double r) { return sobolev_inner(x, y, SobolevIndex(r)); },
          py::arg("x"), py::arg("y"), py::arg("r"));
    m.def("project", &project, py::arg("v"), py::arg("n"));
    m.def("eval_fourier", &eval_fourier, py::arg("v"), py::arg("t"));
    m.def("eval_on_grid", &eval_on_grid, py::arg("v"), py::arg("m"));
    m.def("samples_to_coeffs",
          [](const std::vector<Complex>& samples, int max_index) { return samples_to_coeffs(samples, max_index); },
          py::arg("samples"), py::arg("max_index"));

    // operator
    py::class_<OperatorAssembly>(m, "OperatorAssembly")
        .def_property_readonly("M", &OperatorAssembly::M)
        .def_property_readonly("m", &OperatorAssembly::m)
        .def_property_readonly("max_tail_fraction", &OperatorAssembly::max_tail_fraction)
        .def_property_readonly("truncation_warning", &OperatorAssembly::truncation_warning)
        .def_property_readonly("matrix", &OperatorAssembly::matrix)
        .def("column", &OperatorAssembly::column, py::arg("k"))
        .def("galerkin_block", &OperatorAssembly::galerkin_block, py::arg("n"));

    m.def("k0_apply", &k0_apply, py::arg("v"));
    m.def(
        "assemble_operator",
        [](const BoundaryCurve& curve, int M, std::optional<int> quad) {
            py::gil_scoped_release release;
            return quad ? assemble_operator(curve, M, *quad) : assemble_operator(curve, M);
        },
        py::arg("curve"), py::arg("M"), py::arg("m") = py::none());
    m.def("apply_K", &apply_K, py::arg("assembly"), py::arg("v"));

    // solvers
    py::enum_<MethodKind>(m, "MethodKind")
        .value("LS", MethodKind::LS)
        .value("DLS", MethodKind::DLS)
        .value("BG", MethodKind::BG);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("solution", &SolveReport::solution)
        .def_readonly("method", &SolveReport::method)
        .def_readonly("n", &SolveReport::n)
        .def_readonly("residual_norm", &SolveReport::residual_norm)
        .def_readonly("condition_estimate", &SolveReport::condition_estimate);

    m.def("parse_method", &parse_method, py::arg("text"));
    m.def("solve", &solve, py::arg("method"), py::arg("assembly"), py::arg("b"), py::arg("n"),
          py::call_guard<py::gil_scoped_release>());
    m.def("solve_bg", &solve_bg, py::arg("assembly"), py::arg("b"), py::arg("n"));
    m.def("solve_ls", &solve_ls, py::arg("assembly"), py::arg("b"), py::arg("n"));
    m.def("solve_dls", &solve_dls, py::arg("assembly"), py::arg("b"), py::arg("n"));
    m.def("stability_sigma", &stability_sigma, py::arg("assembly"), py::arg("n"));

    // harness
    m.def("manufactured_solution", &manufactured_solution, py::arg("degree"));
    m.def("sobolev_decay_solution", &sobolev_decay_solution, py::arg("exponent"), py::arg("M"));
    m.def(
        "power_tail_rhs", [](double alpha, int M) { return make_rhs(RhsSpec{PowerTail{alpha}, M}); },
        py::arg("alpha"), py::arg("M"));
    m.def("add_noise", &add_noise, py::arg("b"), py::arg("delta"), py::arg("seed"));
    m.def(
        "run_divergence",
        [](const OperatorAssembly& a, MethodKind method, double alpha, const std::vector<int>& n_list) {
            StudyResult result;
            {
                py::gil_scoped_release release;
                result = run_divergence(a, method, alpha, n_list);
            }
            return study_to_dict(result);
        },
        py::arg("assembly"), py::arg("method"), py::arg("alpha"), py::arg("n_list"));
    m.def(
        "run_convergence",
        [](const OperatorAssembly& a, MethodKind method, const FourierVector& exact, const std::vector<double>& deltas,
           std::optional<std::vector<int>> n_list, std::optional<double> r, const std::vector<std::uint64_t>& seeds) {
            if (n_list.has_value() == r.has_value()) {
                throw DomainError("pass exactly one of n_list or r");
            }
            const NRule rule = n_list ? NRule{FixedN{*n_list}} : NRule{OptimalFromDelta{*r}};
            StudyResult result;
            {
                py::gil_scoped_release release;
                result = run_convergence(a, method, exact, deltas, rule, seeds);
            }
            return study_to_dict(result);
        },
        py::arg("assembly"), py::arg("method"), py::arg("exact_solution"), py::arg("deltas"),
        py::arg("n_list") = py::none(), py::arg("r") = py::none(), py::arg("seeds") = std::vector<std::uint64_t>{0});
    m.def(
        "fit_rate",
        [](const std::vector<double>& xs, const std::vector<double>& values) {
            if (xs.size() != values.size()) {
                throw DomainError("fit_rate: xs and values differ in length");
            }
            std::vector<ExperimentRecord> recs;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                recs.push_back({MethodKind::BG, 0, xs[i], values[i], ValueKind::ErrorH0, 0});
            }
            const RateFit fit = fit_rate(recs, XAxis::Delta);
            return py::make_tuple(fit.slope, fit.r_squared);
        },
        py::arg("xs"), py::arg("values"), "Log-log slope and r^2 of values against xs.");
}
