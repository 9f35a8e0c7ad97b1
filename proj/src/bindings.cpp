#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lagvac/config.hpp"
#include "lagvac/diagnostics.hpp"
#include "lagvac/model.hpp"
#include "lagvac/runner.hpp"
#include "lagvac/solver.hpp"

namespace py = pybind11;
using namespace lagvac;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lagrangian solver and diagnostics for a viscous liquid-gas model with vacuum";
    m.attr("__version__") = kVersion;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverAbort>(m, "SolverAbort", PyExc_RuntimeError);
    py::register_exception<FitError>(m, "FitError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double, int>(), py::arg("gamma"), py::arg("beta"), py::arg("rho_l") = 1.0,
             py::arg("moment_n") = 0)
        .def_readonly("gamma", &ModelParams::gamma)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("rho_l", &ModelParams::rho_l)
        .def_readonly("moment_n", &ModelParams::moment_n)
        .def_static("min_moment_order", &ModelParams::min_moment_order);

    py::enum_<RegimeKind>(m, "RegimeKind")
        .value("Discontinuous", RegimeKind::Discontinuous)
        .value("Continuous", RegimeKind::Continuous);

    py::class_<VacuumRegime>(m, "VacuumRegime")
        .def_static("discontinuous", &VacuumRegime::discontinuous)
        .def_static("continuous", &VacuumRegime::continuous, py::arg("alpha"), py::arg("k1"), py::arg("k2"),
                    py::arg("k3"), py::arg("k4"))
        .def_readonly("kind", &VacuumRegime::kind)
        .def_readonly("alpha", &VacuumRegime::alpha)
        .def_readonly("k1", &VacuumRegime::k1)
        .def_readonly("k2", &VacuumRegime::k2)
        .def_readonly("k3", &VacuumRegime::k3)
        .def_readonly("k4", &VacuumRegime::k4);

    py::class_<ProfileSpec>(m, "ProfileSpec")
        .def_static("constant", &ProfileSpec::constant, py::arg("m0"), py::arg("n0"), py::arg("u0") = 0.0)
        .def_static("bump", &ProfileSpec::bump, py::arg("m0_base"), py::arg("m0_amp"), py::arg("n0_base"),
                    py::arg("n0_amp"), py::arg("width") = 0.15)
        .def_static("phi_power", &ProfileSpec::phi_power, py::arg("k_m"), py::arg("k_n"))
        .def_static("custom", &ProfileSpec::custom, py::arg("m0"), py::arg("n0"), py::arg("u0"));

    py::class_<InitialData>(m, "InitialData")
        .def_readonly("c0", &InitialData::c0)
        .def_readonly("q0", &InitialData::q0)
        .def_readonly("u0", &InitialData::u0)
        .def_property_readonly("cells", &InitialData::cells);

    py::class_<LagrangianState>(m, "LagrangianState")
        .def(py::init([](double t, std::vector<double> c, std::vector<double> q, std::vector<double> u) {
                 LagrangianState s;
                 s.t = t;
                 s.c = std::move(c);
                 s.q = std::move(q);
                 s.u = std::move(u);
                 return s;
             }),
             py::arg("t"), py::arg("c"), py::arg("q"), py::arg("u"))
        .def_readonly("t", &LagrangianState::t)
        .def_readonly("c", &LagrangianState::c)
        .def_readonly("q", &LagrangianState::q)
        .def_readonly("u", &LagrangianState::u)
        .def_property_readonly("cells", &LagrangianState::cells);

    py::class_<StepControl>(m, "StepControl")
        .def(py::init([](double dt_init, double t_end, double dt_min, double positivity_guard) {
                 StepControl c;
                 c.dt_init = dt_init;
                 c.t_end = t_end;
                 c.dt_min = dt_min;
                 c.positivity_guard = positivity_guard;
                 validate(c);
                 return c;
             }),
             py::arg("dt_init") = 1e-3, py::arg("t_end") = 1.0, py::arg("dt_min") = 1e-12,
             py::arg("positivity_guard") = 0.5)
        .def_readonly("dt_init", &StepControl::dt_init)
        .def_readonly("t_end", &StepControl::t_end)
        .def_readonly("dt_min", &StepControl::dt_min)
        .def_readonly("positivity_guard", &StepControl::positivity_guard);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("a_left", &Trajectory::a_left)
        .def_readonly("diss_visc_cum", &Trajectory::diss_visc_cum)
        .def_readonly("diss_total_cum", &Trajectory::diss_total_cum)
        .def_readonly("steps", &Trajectory::steps);

    py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
        .def_readonly("t", &DiagnosticsRecord::t)
        .def_readonly("sup_m", &DiagnosticsRecord::sup_m)
        .def_readonly("sup_n", &DiagnosticsRecord::sup_n)
        .def_readonly("energy", &DiagnosticsRecord::energy)
        .def_readonly("dissipation", &DiagnosticsRecord::dissipation)
        .def_readonly("momentum", &DiagnosticsRecord::momentum)
        .def_readonly("sup_cq", &DiagnosticsRecord::sup_cq)
        .def_readonly("lp_cq_gamma", &DiagnosticsRecord::lp_cq_gamma)
        .def_readonly("moment_2n", &DiagnosticsRecord::moment_2n)
        .def_readonly("grad_cq_beta", &DiagnosticsRecord::grad_cq_beta)
        .def_readonly("q_left", &DiagnosticsRecord::q_left)
        .def_readonly("q_right", &DiagnosticsRecord::q_right)
        .def_readonly("balance_residual", &DiagnosticsRecord::balance_residual)
        .def_readonly("w_norm", &DiagnosticsRecord::w_norm)
        .def_readonly("lyapunov", &DiagnosticsRecord::lyapunov);

    py::class_<RateInfo>(m, "RateInfo")
        .def_readonly("theta", &RateInfo::theta)
        .def_readonly("rate", &RateInfo::rate)
        .def_readonly("log_power", &RateInfo::log_power)
        .def_readonly("log_corrected", &RateInfo::log_corrected);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("exponent", &DecayFit::exponent)
        .def_readonly("t_lo", &DecayFit::t_lo)
        .def_readonly("t_hi", &DecayFit::t_hi)
        .def_readonly("r2", &DecayFit::r2)
        .def_readonly("theoretical_rate", &DecayFit::theoretical_rate)
        .def_readonly("log_corrected", &DecayFit::log_corrected)
        .def_readonly("passed", &DecayFit::pass);

    py::class_<EulerianSample>(m, "EulerianSample")
        .def_readonly("a_t", &EulerianSample::a_t)
        .def_readonly("b_t", &EulerianSample::b_t)
        .def_readonly("x", &EulerianSample::x)
        .def_readonly("u", &EulerianSample::u)
        .def_readonly("x_center", &EulerianSample::x_center)
        .def_readonly("m", &EulerianSample::m)
        .def_readonly("n", &EulerianSample::n)
        .def_readonly("alpha_l", &EulerianSample::alpha_l)
        .def_readonly("alpha_g", &EulerianSample::alpha_g)
        .def_readonly("rho_g", &EulerianSample::rho_g);

    py::enum_<Endpoint>(m, "Endpoint").value("Left", Endpoint::Left).value("Right", Endpoint::Right);

    m.def("q_of_m", &q_of_m, py::arg("m"), py::arg("rho_l"));
    m.def("m_of_q", &m_of_q, py::arg("q"), py::arg("rho_l"));
    m.def("pressure", &pressure, py::arg("c"), py::arg("q"), py::arg("gamma"));
    m.def("visc_coeff", &visc_coeff, py::arg("c"), py::arg("q"), py::arg("beta"));
    m.def("make_initial_data", &make_initial_data, py::arg("params"), py::arg("regime"), py::arg("profile"),
          py::arg("n_cells"));
    m.def("step", &step, py::arg("state"), py::arg("params"), py::arg("regime"), py::arg("ctrl"));
    m.def("run",
          py::overload_cast<const InitialData&, const ModelParams&, const VacuumRegime&, const StepControl&,
                            const std::vector<double>&>(&run),
          py::arg("initial"), py::arg("params"), py::arg("regime"), py::arg("ctrl"), py::arg("sample_times"));
    m.def("energy", &energy, py::arg("state"), py::arg("params"));
    m.def("dissipation_rate", &dissipation_rate, py::arg("state"), py::arg("params"));
    m.def("momentum", &momentum, py::arg("state"));
    m.def("exact_boundary_q", &exact_boundary_q, py::arg("t"), py::arg("d"), py::arg("params"), py::arg("regime"),
          py::arg("initial"));
    m.def("theoretical_rate", &theoretical_rate, py::arg("params"), py::arg("regime"));
    m.def("w_function", &w_function, py::arg("state"), py::arg("params"), py::arg("t"));
    m.def("lyapunov_functional", &lyapunov_functional, py::arg("state"), py::arg("params"), py::arg("t"),
          py::arg("theta"));
    m.def("momentum_balance_residual", &momentum_balance_residual, py::arg("states"), py::arg("probe_x"),
          py::arg("params"));
    m.def("fit_decay", &fit_decay, py::arg("t"), py::arg("value"), py::arg("t_lo"), py::arg("t_hi"),
          py::arg("log_corrected") = false, py::arg("log_power") = 0.0, py::arg("theoretical_rate") = 0.0,
          py::arg("slack") = 0.2);
    m.def("reconstruct_eulerian", &reconstruct_eulerian, py::arg("state"), py::arg("params"), py::arg("regime"),
          py::arg("a_t"));

    py::class_<DiagnosticsHistory>(m, "DiagnosticsHistory")
        .def(py::init<const LagrangianState&, const ModelParams&, const VacuumRegime&, double, bool>(),
             py::arg("initial"), py::arg("params"), py::arg("regime"), py::arg("probe_x") = 0.5,
             py::arg("enable_w") = true)
        .def("record", &DiagnosticsHistory::record, py::arg("state"))
        .def_property_readonly("probe_cell", &DiagnosticsHistory::probe_cell)
        .def_property_readonly("w_enabled", &DiagnosticsHistory::w_enabled);
}
