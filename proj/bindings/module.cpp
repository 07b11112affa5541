// module.cpp — pybind11 bindings for the main operations.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "adsearch/bounds.hpp"
#include "adsearch/dynamics.hpp"
#include "adsearch/experiments.hpp"
#include "adsearch/verification.hpp"

namespace py = pybind11;
using namespace adsearch;

PYBIND11_MODULE(adsearch, m) {
  m.doc() =
      "Local adiabatic quantum search with dephasing in the instantaneous "
      "eigenbasis: spectral model, schedule, eigenframe dynamics, run-time "
      "bounds, and scaling experiments.";

  py::register_exception<QuadratureError>(m, "QuadratureError");
  py::register_exception<IntegratorError>(m, "IntegratorError");

  py::class_<SearchModel>(m, "SearchModel")
      .def(py::init<std::int64_t>(), py::arg("n_items"))
      .def_readonly("n_items", &SearchModel::n_items)
      .def("__repr__", [](const SearchModel& s) {
        return "SearchModel(n_items=" + std::to_string(s.n_items) + ")";
      });

  py::class_<CouplingSpec>(m, "CouplingSpec")
      .def_static("hamiltonian", &CouplingSpec::hamiltonian)
      .def_static("power", &CouplingSpec::power, py::arg("sigma"))
      .def_static("custom", &CouplingSpec::custom, py::arg("eta"))
      .def_property_readonly("sigma", &CouplingSpec::sigma)
      .def("splitting_of_gap", &CouplingSpec::splitting_of_gap);

  py::class_<SpectralPoint>(m, "SpectralPoint")
      .def_readonly("r", &SpectralPoint::r)
      .def_readonly("delta", &SpectralPoint::delta)
      .def_readonly("z", &SpectralPoint::z)
      .def_readonly("gamma", &SpectralPoint::gamma)
      .def_readonly("e0", &SpectralPoint::e0)
      .def_readonly("e1", &SpectralPoint::e1);

  m.def("gap", &gap, py::arg("model"), py::arg("r"));
  m.def("gap_derivative", &gap_derivative, py::arg("model"), py::arg("r"));
  m.def("coupling_z", &coupling_z, py::arg("model"), py::arg("r"));
  m.def("z_accumulated", &z_accumulated, py::arg("model"), py::arg("r"));
  m.def("z_integral", &z_integral, py::arg("model"));
  m.def("gamma_split", &gamma_split, py::arg("spec"), py::arg("model"),
        py::arg("r"));
  m.def("zeta", &zeta, py::arg("spec"), py::arg("model"));
  m.def("k_fluctuation", &k_fluctuation, py::arg("spec"), py::arg("model"));
  m.def("mixing_angle", &mixing_angle, py::arg("model"), py::arg("r"));
  m.def("eigensystem",
        py::overload_cast<const SearchModel&, const CouplingSpec&, double>(
            &eigensystem),
        py::arg("model"), py::arg("spec"), py::arg("r"));
  m.def("eigensystem",
        py::overload_cast<const SearchModel&, double>(&eigensystem),
        py::arg("model"), py::arg("r"));
  m.def("y0_closed", &y0_closed, py::arg("model"), py::arg("r"));

  py::class_<Schedule>(m, "Schedule")
      .def(py::init<const SearchModel&>(), py::arg("model"))
      .def_readonly("model", &Schedule::model)
      .def_readwrite("normalization", &Schedule::normalization)
      .def("s_of_r", &Schedule::s_of_r, py::arg("r"))
      .def("r_of_s", &Schedule::r_of_s, py::arg("s"))
      .def("velocity", &Schedule::velocity, py::arg("r"))
      .def("r_phase", &Schedule::r_phase, py::arg("r"));
  m.def("normalization", &normalization, py::arg("model"));
  m.def("q_accum", &q_accum, py::arg("schedule"), py::arg("spec"),
        py::arg("r"));

  py::class_<DecoherenceParams>(m, "DecoherenceParams")
      .def(py::init<double, double, double, CouplingSpec>(), py::arg("a"),
           py::arg("b"), py::arg("runtime"), py::arg("coupling"))
      .def_static("from_omega", &DecoherenceParams::from_omega,
                  py::arg("omega"), py::arg("runtime"), py::arg("coupling"))
      .def_readonly("a_weight", &DecoherenceParams::a_weight)
      .def_readonly("b_weight", &DecoherenceParams::b_weight)
      .def_readonly("runtime", &DecoherenceParams::runtime);

  py::class_<EigenFrameState>(m, "EigenFrameState")
      .def(py::init([](double y, double c_re, double c_im) {
             return EigenFrameState{y, c_re, c_im};
           }),
           py::arg("y"), py::arg("c_re") = 0.0, py::arg("c_im") = 0.0)
      .def_readwrite("y", &EigenFrameState::y)
      .def_readwrite("c_re", &EigenFrameState::c_re)
      .def_readwrite("c_im", &EigenFrameState::c_im);

  py::class_<BlochCoefficients>(m, "BlochCoefficients")
      .def_readonly("z", &BlochCoefficients::z)
      .def_readonly("damping", &BlochCoefficients::damping)
      .def_readonly("phase", &BlochCoefficients::phase);
  m.def("bloch_coefficients", &bloch_coefficients, py::arg("model"),
        py::arg("schedule"), py::arg("params"), py::arg("r"));
  m.def("bloch_derivative", &bloch_derivative, py::arg("state"), py::arg("r"),
        py::arg("model"), py::arg("schedule"), py::arg("params"));

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("r", &TrajectorySample::r)
      .def_readonly("y", &TrajectorySample::y)
      .def_readonly("c_re", &TrajectorySample::c_re)
      .def_readonly("c_im", &TrajectorySample::c_im)
      .def_readonly("rho00", &TrajectorySample::rho00);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("n_items", &Trajectory::n_items)
      .def_readonly("a_weight", &Trajectory::a_weight)
      .def_readonly("b_weight", &Trajectory::b_weight)
      .def_readonly("runtime", &Trajectory::runtime)
      .def_readonly("tolerance", &Trajectory::tolerance)
      .def_readonly("steps_accepted", &Trajectory::steps_accepted)
      .def_readonly("steps_rejected", &Trajectory::steps_rejected)
      .def_readonly("rhs_evaluations", &Trajectory::rhs_evaluations)
      .def("to_csv", [](const Trajectory& t) {
        std::ostringstream out;
        write_trajectory_csv(t, out);
        return out.str();
      });

  m.def("integrate", &integrate, py::arg("model"), py::arg("schedule"),
        py::arg("params"), py::arg("tol"), py::arg("n_samples") = 201,
        py::call_guard<py::gil_scoped_release>());
  m.def("success_probability", &success_probability, py::arg("model"),
        py::arg("schedule"), py::arg("params"), py::arg("tol"),
        py::call_guard<py::gil_scoped_release>());
  m.def("integral_equation_residual", &integral_equation_residual,
        py::arg("model"), py::arg("schedule"), py::arg("params"),
        py::arg("trajectory"), py::call_guard<py::gil_scoped_release>());
  m.def("full_space_deviation", &full_space_deviation, py::arg("model"),
        py::arg("schedule"), py::arg("params"), py::arg("tol"),
        py::call_guard<py::gil_scoped_release>());

  m.def("lower_bound_general", &lower_bound_general, py::arg("n_items"),
        py::arg("runtime"), py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("lower_bound_wide_open", &lower_bound_wide_open, py::arg("n_items"),
        py::arg("runtime"), py::arg("sigma"));
  m.def("phi", &phi, py::arg("x"), py::arg("sigma"));
  m.def("necessity_alpha", &necessity_alpha, py::arg("n_items"),
        py::arg("runtime"), py::arg("sigma"));
  m.def("necessity_I", &necessity_I, py::arg("alpha"), py::arg("beta"),
        py::arg("sigma"), py::arg("abs_tol") = 1e-8);
  m.def("necessity_I_brute", &necessity_I_brute, py::arg("alpha"),
        py::arg("beta"), py::arg("sigma"), py::arg("n_grid"));
  m.def("necessity_F_integral", &necessity_F_integral, py::arg("alpha"),
        py::arg("sigma"), py::arg("abs_tol") = 1e-8);

  py::class_<NecessityI0>(m, "NecessityI0")
      .def_readonly("i0", &NecessityI0::i0)
      .def_readonly("change_of_variables_lower",
                    &NecessityI0::change_of_variables_lower);
  m.def("necessity_I0", &necessity_I0, py::arg("model"), py::arg("schedule"),
        py::arg("spec"), py::arg("runtime"));

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("omega", &SweepRecord::omega)
      .def_readonly("n_items", &SweepRecord::n_items)
      .def_readonly("runtime_at_target", &SweepRecord::runtime_at_target)
      .def_readonly("achieved_probability", &SweepRecord::achieved_probability)
      .def_readonly("bisection_iterations", &SweepRecord::bisection_iterations)
      .def_readonly("flag", &SweepRecord::flag);
  m.def("runtime_for_success", &runtime_for_success, py::arg("model"),
        py::arg("spec"), py::arg("omega"), py::arg("target"), py::arg("p_tol"),
        py::arg("ode_tol") = 1e-8, py::call_guard<py::gil_scoped_release>());

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("omega_list", &SweepConfig::omega_list)
      .def_readwrite("n_list", &SweepConfig::n_list)
      .def_readwrite("coupling", &SweepConfig::coupling)
      .def_readwrite("target", &SweepConfig::target)
      .def_readwrite("p_tol", &SweepConfig::p_tol)
      .def_readwrite("ode_tol", &SweepConfig::ode_tol)
      .def_readwrite("workers", &SweepConfig::workers);
  m.def("scaling_sweep", &scaling_sweep, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<SlopeFit>(m, "SlopeFit")
      .def_readonly("omega", &SlopeFit::omega)
      .def_readonly("slope", &SlopeFit::slope)
      .def_readonly("intercept", &SlopeFit::intercept)
      .def_readonly("residual_rms", &SlopeFit::residual_rms)
      .def_readonly("tail_slope", &SlopeFit::tail_slope)
      .def_readonly("n_min", &SlopeFit::n_min)
      .def_readonly("n_max", &SlopeFit::n_max);
  m.def(
      "slope_fit",
      [](const std::vector<SweepRecord>& records, std::int64_t n_min,
         std::int64_t n_max) { return slope_fit(records, n_min, n_max); },
      py::arg("records"), py::arg("n_min"), py::arg("n_max"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("observed", &CheckResult::observed)
      .def_readonly("limit", &CheckResult::limit);
  m.def("run_verification_suite", &run_verification_suite,
        py::arg("rng_seed") = 20240901,
        py::call_guard<py::gil_scoped_release>());
}
