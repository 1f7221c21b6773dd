#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlgosc/diagnostics.hpp"
#include "mlgosc/harness.hpp"
#include "mlgosc/optimizer.hpp"

namespace py = pybind11;
using namespace mlgosc;

PYBIND11_MODULE(_mlgosc, m) {
    m.doc() = "modified Leggett-Garg correlators for the harmonic oscillator";

    py::register_exception<TruncationError>(m, "TruncationError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<TruncationPolicy>(m, "TruncationPolicy")
        .def(py::init<>())
        .def(py::init([](int max_level, double tail_tol) {
                 return TruncationPolicy{max_level, tail_tol};
             }),
             py::arg("max_level"), py::arg("tail_tol") = 1e-8)
        .def_readwrite("max_level", &TruncationPolicy::max_level)
        .def_readwrite("tail_tol", &TruncationPolicy::tail_tol);

    py::class_<OscillatorConfig>(m, "OscillatorConfig")
        .def(py::init<>())
        .def(py::init([](double omega, TruncationPolicy t) {
                 return OscillatorConfig{omega, t};
             }),
             py::arg("omega") = 1.0, py::arg("truncation") = TruncationPolicy{})
        .def_readwrite("omega", &OscillatorConfig::omega)
        .def_readwrite("truncation", &OscillatorConfig::truncation);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init([](Eigen::VectorXcd c) { return StateVector{std::move(c)}; }))
        .def_readonly("amplitudes", &StateVector::amplitudes)
        .def("norm_sq", &StateVector::norm_sq)
        .def("mean_level", &StateVector::mean_level)
        .def("mean_x", &StateVector::mean_x)
        .def("mean_p", &StateVector::mean_p)
        .def_static("fock", &StateVector::fock, py::arg("n"), py::arg("max_level"));

    py::enum_<CouplingKind>(m, "CouplingKind")
        .value("Delta", CouplingKind::Delta)
        .value("Gaussian", CouplingKind::Gaussian);

    py::class_<CouplingSpec>(m, "CouplingSpec")
        .def_static("delta", &CouplingSpec::delta)
        .def_static("gaussian", &CouplingSpec::gaussian, py::arg("sigma"))
        .def_readonly("kind", &CouplingSpec::kind)
        .def_readonly("sigma", &CouplingSpec::sigma);

    py::class_<TimeWindow>(m, "TimeWindow")
        .def(py::init([](double t1, double t2) { return TimeWindow{t1, t2}; }), py::arg("t1"),
             py::arg("t2"))
        .def_readwrite("t1", &TimeWindow::t1)
        .def_readwrite("t2", &TimeWindow::t2)
        .def("length", &TimeWindow::length);

    py::class_<MatrixElementTable>(m, "MatrixElementTable")
        .def("__call__", &MatrixElementTable::operator(), py::arg("n"), py::arg("k"))
        .def_property_readonly("extent", &MatrixElementTable::extent)
        .def_property_readonly("entries", &MatrixElementTable::entries);

    m.def("psi_at_origin", &psi_at_origin, py::arg("n"));
    m.def("coherent_alpha", &coherent_alpha, py::arg("x0"), py::arg("p0"), py::arg("omega") = 1.0);
    m.def("coherent_amplitudes", &coherent_amplitudes, py::arg("alpha"), py::arg("policy"));
    m.def("apply_momentum", &apply_momentum, py::arg("phi"), py::arg("config"));

    m.def("delta_matrix_elements",
          py::overload_cast<const OscillatorConfig&, int>(&delta_matrix_elements),
          py::arg("config"), py::arg("extent"));
    m.def("gaussian_matrix_elements",
          py::overload_cast<double, const OscillatorConfig&, int>(&gaussian_matrix_elements),
          py::arg("sigma"), py::arg("config"), py::arg("extent"));
    m.def("time_kernel_I", &time_kernel_I, py::arg("l"), py::arg("k"), py::arg("window"),
          py::arg("config"));
    m.def("product_kernel_G", &product_kernel_G, py::arg("n"), py::arg("l"), py::arg("k"),
          py::arg("window"), py::arg("config"));

    py::enum_<Exactness>(m, "Exactness")
        .value("Spectral", Exactness::Spectral)
        .value("CosApproximation", Exactness::CosApproximation);

    py::class_<CorrelatorValue>(m, "CorrelatorValue")
        .def_readonly("value", &CorrelatorValue::value)
        .def_readonly("tail_estimate", &CorrelatorValue::tail_estimate)
        .def_readonly("window", &CorrelatorValue::window)
        .def_readonly("coupling", &CorrelatorValue::coupling)
        .def_readonly("exactness", &CorrelatorValue::exactness);

    py::class_<CorrelatorElement>(m, "CorrelatorElement")
        .def_readonly("value", &CorrelatorElement::value)
        .def_readonly("tail_estimate", &CorrelatorElement::tail_estimate);

    py::enum_<DwellMethod>(m, "DwellMethod")
        .value("WindowPi", DwellMethod::WindowPi)
        .value("Spectral", DwellMethod::Spectral);

    py::class_<DwellTime>(m, "DwellTime")
        .def(py::init([](double v, DwellMethod method) { return DwellTime{v, method}; }),
             py::arg("tau_d_sq"), py::arg("method") = DwellMethod::Spectral)
        .def_readonly("tau_d_sq", &DwellTime::tau_d_sq)
        .def_readonly("method", &DwellTime::method);

    m.def("f12sq_element", &f12sq_element, py::arg("m"), py::arg("n"), py::arg("window"),
          py::arg("table"), py::arg("config"));
    m.def("f12sq_expectation", &f12sq_expectation, py::arg("state"), py::arg("window"),
          py::arg("table"), py::arg("config"));
    m.def("f12sq_eigenstate_closed", &f12sq_eigenstate_closed, py::arg("n"), py::arg("tau"),
          py::arg("table"), py::arg("config"));
    m.def("f12sq_p1_closed", &f12sq_p1_closed, py::arg("tau"), py::arg("config"));
    m.def("dwell_time_sq", &dwell_time_sq, py::arg("state"), py::arg("table"), py::arg("config"),
          py::arg("method") = DwellMethod::Spectral);
    m.def("standard_correlator_map", &standard_correlator_map, py::arg("f12sq"), py::arg("dwell"));

    py::enum_<Family>(m, "Family")
        .value("MLG3", Family::MLG3)
        .value("MLG4", Family::MLG4)
        .value("Stat3", Family::Stat3)
        .value("Stat4", Family::Stat4)
        .value("TwoTimeDelta", Family::TwoTimeDelta);

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("family", &InequalityReport::family)
        .def_readonly("kernels", &InequalityReport::kernels)
        .def_readonly("violated", &InequalityReport::violated)
        .def_readonly("luders_scale", &InequalityReport::luders_scale)
        .def_readonly("luders_upper", &InequalityReport::luders_upper)
        .def_readonly("upper_bound", &InequalityReport::upper_bound)
        .def_readonly("tau_d_sq", &InequalityReport::tau_d_sq)
        .def_readonly("flag_tol", &InequalityReport::flag_tol);

    m.def("mlg3_evaluate", &mlg3_evaluate, py::arg("f12"), py::arg("f23"), py::arg("f13"),
          py::arg("dwell"));
    m.def("mlg4_evaluate", &mlg4_evaluate, py::arg("f12"), py::arg("f23"), py::arg("f34"),
          py::arg("f14"), py::arg("dwell"));
    m.def("stationary_kernels", &stationary_kernels, py::arg("n"), py::arg("tau"), py::arg("table"),
          py::arg("config"));
    m.def("lg2_two_time_delta", &lg2_two_time_delta, py::arg("f12"), py::arg("dwell"));
    m.def("trajectory_probability_pair", &trajectory_probability_pair, py::arg("c12"),
          py::arg("c23"), py::arg("c13"), py::arg("s1"), py::arg("s2"), py::arg("s3"));

    py::class_<CorrelatorCurve>(m, "CorrelatorCurve")
        .def_readonly("omega_tau", &CorrelatorCurve::omega_tau)
        .def_readonly("value", &CorrelatorCurve::value)
        .def_readonly("secular_coefficient", &CorrelatorCurve::secular_coefficient);

    m.def("oscillatory_part", &oscillatory_part, py::arg("n"), py::arg("omega_tau_grid"),
          py::arg("table"), py::arg("config"));
    m.def("first_stationary_time", &first_stationary_time, py::arg("curve"));
    m.def("turnaround_time", py::overload_cast<const CorrelatorCurve&>(&turnaround_time),
          py::arg("curve"));
    m.def("turnaround_time_for",
          py::overload_cast<int, const MatrixElementTable&, const OscillatorConfig&, double>(
              &turnaround_time),
          py::arg("n"), py::arg("table"), py::arg("config"), py::arg("omega_tau_max") = 7.0);

    py::class_<SearchDomain>(m, "SearchDomain")
        .def(py::init<>())
        .def_readwrite("x0_min", &SearchDomain::x0_min)
        .def_readwrite("x0_max", &SearchDomain::x0_max)
        .def_readwrite("p0_min", &SearchDomain::p0_min)
        .def_readwrite("p0_max", &SearchDomain::p0_max)
        .def_readwrite("grid_x", &SearchDomain::grid_x)
        .def_readwrite("grid_p", &SearchDomain::grid_p)
        .def_readwrite("refine_tol", &SearchDomain::refine_tol);

    py::class_<OptimumRecord>(m, "OptimumRecord")
        .def_readonly("alpha", &OptimumRecord::alpha)
        .def_readonly("x0", &OptimumRecord::x0)
        .def_readonly("p0", &OptimumRecord::p0)
        .def_readonly("best_kernel", &OptimumRecord::best_kernel)
        .def_readonly("kernel_index", &OptimumRecord::kernel_index)
        .def_readonly("tau_d_sq", &OptimumRecord::tau_d_sq)
        .def_readonly("omega_tau", &OptimumRecord::omega_tau)
        .def_readonly("converged", &OptimumRecord::converged);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("omega_tau", &SweepRow::omega_tau)
        .def_readonly("record", &SweepRow::record)
        .def_readonly("error", &SweepRow::error);

    m.def("optimize_coherent", &optimize_coherent, py::arg("tau"), py::arg("family"),
          py::arg("domain"), py::arg("table"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_grid", &sweep_grid, py::arg("tau_values"), py::arg("family"), py::arg("domain"),
          py::arg("table"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
