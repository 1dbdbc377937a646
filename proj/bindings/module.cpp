#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "remon/coding.hpp"
#include "remon/errors.hpp"
#include "remon/estimation.hpp"
#include "remon/linalg.hpp"
#include "remon/metrics.hpp"
#include "remon/montecarlo.hpp"
#include "remon/pareto.hpp"
#include "remon/process.hpp"
#include "remon/timing.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Time-average MSE / Age-of-Information trade-off for remotely "
              "monitored Gauss-Markov processes over finite-blocklength links";

    py::register_exception<remon::infeasible_error>(m, "InfeasibleError");

    // process
    py::class_<remon::process::ProcessModel>(m, "ProcessModel")
        .def(py::init<remon::linalg::Matrix, remon::linalg::Matrix>(), py::arg("A"),
             py::arg("Q_u"))
        .def_static("scalar", &remon::process::ProcessModel::scalar, py::arg("a"), py::arg("q_u"))
        .def_property_readonly("dim", &remon::process::ProcessModel::dim)
        .def_property_readonly("A", &remon::process::ProcessModel::A)
        .def_property_readonly("Q_u", &remon::process::ProcessModel::Q_u)
        .def_property_readonly("steady_covariance",
                               &remon::process::ProcessModel::steady_covariance);

    py::class_<remon::process::ScalarProcess>(m, "ScalarProcess")
        .def(py::init<double, double>(), py::arg("a"), py::arg("q_u"))
        .def_readonly("a", &remon::process::ScalarProcess::a)
        .def_readonly("q_u", &remon::process::ScalarProcess::q_u)
        .def_property_readonly("q_x", &remon::process::ScalarProcess::q_x);

    m.def(
        "transition",
        [](const remon::process::ProcessModel& model, double h) {
            const remon::process::Transition tr = remon::process::transition(model, h);
            return py::make_tuple(tr.Phi, tr.Sigma);
        },
        py::arg("model"), py::arg("h"),
        "Exact discretization (Phi, Sigma) of the process over h seconds");

    // linalg helpers worth reaching from python
    m.def("mat_exp", &remon::linalg::mat_exp, py::arg("A"), py::arg("t"));
    m.def("lyapunov_solve", &remon::linalg::lyapunov_solve, py::arg("A"), py::arg("Q"));

    // coding
    py::enum_<remon::coding::SourceVarMode>(m, "SourceVarMode")
        .value("STEADY_STATE", remon::coding::SourceVarMode::SteadyState)
        .value("RECEIVER_OUTPUT", remon::coding::SourceVarMode::ReceiverOutput);

    py::class_<remon::coding::ChannelSpec>(m, "ChannelSpec")
        .def(py::init<double>(), py::arg("snr"))
        .def_readonly("snr", &remon::coding::ChannelSpec::snr);

    py::class_<remon::coding::CodingPoint>(m, "CodingPoint")
        .def_readonly("distortion", &remon::coding::CodingPoint::distortion)
        .def_readonly("excess_prob", &remon::coding::CodingPoint::excess_prob)
        .def_readonly("source_dim", &remon::coding::CodingPoint::source_dim)
        .def_readonly("capacity", &remon::coding::CodingPoint::capacity)
        .def_readonly("rate", &remon::coding::CodingPoint::rate)
        .def_readonly("channel_dispersion", &remon::coding::CodingPoint::channel_dispersion)
        .def_readonly("source_dispersion", &remon::coding::CodingPoint::source_dispersion)
        .def_readonly("blocklength", &remon::coding::CodingPoint::blocklength);

    m.def("q_func", &remon::coding::q_func, py::arg("x"));
    m.def("q_inv", &remon::coding::q_inv, py::arg("eps"));
    m.def("capacity", &remon::coding::capacity, py::arg("snr"));
    m.def(
        "dispersions",
        [](double snr) {
            const remon::coding::Dispersions v = remon::coding::dispersions(snr);
            return py::make_tuple(v.channel, v.source);
        },
        py::arg("snr"), "Channel and source dispersions (V_C, V_S) in bits^2");
    m.def("rate_distortion",
          py::overload_cast<const remon::linalg::Vector&, double>(&remon::coding::rate_distortion),
          py::arg("source_eigs"), py::arg("distortion"));
    m.def("rate_distortion",
          py::overload_cast<double, double>(&remon::coding::rate_distortion),
          py::arg("source_var"), py::arg("distortion"));
    m.def("blocklength", &remon::coding::blocklength, py::arg("source_dim"), py::arg("capacity"),
          py::arg("rate"), py::arg("channel_dispersion"), py::arg("source_dispersion"),
          py::arg("excess_prob"));
    m.def("make_coding_point", &remon::coding::make_coding_point, py::arg("model"),
          py::arg("channel"), py::arg("distortion"), py::arg("excess_prob"),
          py::arg("mode") = remon::coding::SourceVarMode::SteadyState);

    // timing
    py::class_<remon::timing::LinkTiming>(m, "LinkTiming")
        .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("beta"),
             py::arg("wait"))
        .def_readonly("alpha", &remon::timing::LinkTiming::alpha)
        .def_readonly("beta", &remon::timing::LinkTiming::beta)
        .def_readonly("wait", &remon::timing::LinkTiming::wait);

    m.def("attempt_delay",
          py::overload_cast<double, double, double>(&remon::timing::attempt_delay),
          py::arg("alpha"), py::arg("beta"), py::arg("blocklength"));
    m.def(
        "success_delay_moments",
        [](double attempt, double eps) {
            const remon::timing::DelayMoments dm = remon::timing::success_delay_moments(attempt, eps);
            return py::make_tuple(dm.mean, dm.second_moment);
        },
        py::arg("attempt"), py::arg("eps"));

    // estimation
    m.def("mse_delay",
          py::overload_cast<const remon::process::ProcessModel&, double>(
              &remon::estimation::mse_delay),
          py::arg("model"), py::arg("tau"));
    m.def("estimator_gain",
          py::overload_cast<const remon::process::ProcessModel&, double, double>(
              &remon::estimation::estimator_gain),
          py::arg("model"), py::arg("q_w"), py::arg("tau"));
    m.def("mse_channel",
          py::overload_cast<const remon::process::ProcessModel&, double, double>(
              &remon::estimation::mse_channel),
          py::arg("model"), py::arg("q_w"), py::arg("tau"));
    m.def("mse_channel_with_gain", &remon::estimation::mse_channel_with_gain, py::arg("model"),
          py::arg("q_w"), py::arg("tau"), py::arg("gain"));
    m.def("mse_total",
          py::overload_cast<const remon::process::ProcessModel&, double, double>(
              &remon::estimation::mse_total),
          py::arg("model"), py::arg("q_w"), py::arg("tau"));

    // metrics
    py::class_<remon::metrics::CycleAverages>(m, "CycleAverages")
        .def_readonly("mse", &remon::metrics::CycleAverages::mse)
        .def_readonly("mse_delay", &remon::metrics::CycleAverages::mse_delay)
        .def_readonly("mse_channel", &remon::metrics::CycleAverages::mse_channel);

    m.def("avg_mse_scalar", &remon::metrics::avg_mse_scalar, py::arg("proc"), py::arg("q_w"),
          py::arg("attempt"), py::arg("wait"), py::arg("eps"));
    m.def("avg_aoi", &remon::metrics::avg_aoi, py::arg("attempt"), py::arg("wait"), py::arg("eps"));
    m.def("avg_mse_general", &remon::metrics::avg_mse_general, py::arg("model"), py::arg("q_w"),
          py::arg("attempt"), py::arg("wait"), py::arg("eps"), py::arg("tol") = 1e-9);

    py::class_<remon::metrics::TradeoffPoint>(m, "TradeoffPoint")
        .def_readonly("distortion", &remon::metrics::TradeoffPoint::distortion)
        .def_readonly("excess_prob", &remon::metrics::TradeoffPoint::excess_prob)
        .def_readonly("blocklength", &remon::metrics::TradeoffPoint::blocklength)
        .def_readonly("attempt_delay", &remon::metrics::TradeoffPoint::attempt_delay)
        .def_readonly("aoi", &remon::metrics::TradeoffPoint::aoi)
        .def_readonly("mse", &remon::metrics::TradeoffPoint::mse)
        .def_readonly("mse_delay", &remon::metrics::TradeoffPoint::mse_delay)
        .def_readonly("mse_channel", &remon::metrics::TradeoffPoint::mse_channel)
        .def_readonly("feasible", &remon::metrics::TradeoffPoint::feasible);

    py::class_<remon::metrics::EvalOptions>(m, "EvalOptions")
        .def(py::init<>())
        .def_readwrite("source_var", &remon::metrics::EvalOptions::source_var)
        .def_readwrite("integer_blocklength", &remon::metrics::EvalOptions::integer_blocklength)
        .def_readwrite("explicit_q_w", &remon::metrics::EvalOptions::explicit_q_w)
        .def_readwrite("series_tol", &remon::metrics::EvalOptions::series_tol);

    py::class_<remon::metrics::SystemConfig>(m, "SystemConfig")
        .def(py::init([](const remon::process::ProcessModel& model,
                         const remon::coding::ChannelSpec& channel,
                         const remon::timing::LinkTiming& timing,
                         const remon::metrics::EvalOptions& options) {
                 return remon::metrics::SystemConfig{model, channel, timing, options};
             }),
             py::arg("model"), py::arg("channel"), py::arg("timing"),
             py::arg("options") = remon::metrics::EvalOptions{})
        .def_readonly("model", &remon::metrics::SystemConfig::model)
        .def_readonly("channel", &remon::metrics::SystemConfig::channel)
        .def_readonly("timing", &remon::metrics::SystemConfig::timing)
        .def_readonly("options", &remon::metrics::SystemConfig::options);

    m.def("evaluate_point", &remon::metrics::evaluate_point, py::arg("system"),
          py::arg("distortion"), py::arg("excess_prob"));

    // pareto
    py::enum_<remon::pareto::Spacing>(m, "Spacing")
        .value("LINEAR", remon::pareto::Spacing::Linear)
        .value("LOGARITHMIC", remon::pareto::Spacing::Logarithmic);

    py::class_<remon::pareto::SweepGrid>(m, "SweepGrid")
        .def(py::init<>())
        .def_readwrite("d_values", &remon::pareto::SweepGrid::d_values)
        .def_readwrite("eps_values", &remon::pareto::SweepGrid::eps_values)
        .def_static("axis", &remon::pareto::SweepGrid::axis, py::arg("lo"), py::arg("hi"),
                    py::arg("count"), py::arg("spacing"))
        .def_static("default_grid", &remon::pareto::SweepGrid::default_grid,
                    py::arg("max_source_eig"));

    m.def("sweep", &remon::pareto::sweep, py::arg("grid"), py::arg("system"),
          py::arg("threads") = 1);
    m.def("pareto_front", &remon::pareto::pareto_front, py::arg("points"));

    py::class_<remon::pareto::BoundaryPoint>(m, "BoundaryPoint")
        .def_readonly("aoi", &remon::pareto::BoundaryPoint::aoi)
        .def_readonly("value", &remon::pareto::BoundaryPoint::value);

    py::class_<remon::pareto::BoundaryCurves>(m, "BoundaryCurves")
        .def_readonly("mse_delay", &remon::pareto::BoundaryCurves::mse_delay)
        .def_readonly("mse_channel", &remon::pareto::BoundaryCurves::mse_channel)
        .def_readonly("mse_total", &remon::pareto::BoundaryCurves::mse_total);

    m.def("boundary_curves", &remon::pareto::boundary_curves, py::arg("points"));

    // montecarlo
    py::class_<remon::montecarlo::SimConfig>(m, "SimConfig")
        .def(py::init([](const remon::process::ProcessModel& model, double q_w, double attempt,
                         double wait, double eps, long cycles, long paths, std::uint64_t seed,
                         double grid_step, int threads) {
                 return remon::montecarlo::SimConfig{model, q_w,   attempt, wait,      eps,
                                                     cycles, paths, seed,    grid_step, threads};
             }),
             py::arg("model"), py::arg("q_w"), py::arg("attempt"), py::arg("wait"), py::arg("eps"),
             py::arg("cycles"), py::arg("paths"), py::arg("seed") = 12345,
             py::arg("grid_step") = 0.0, py::arg("threads") = 1);

    py::class_<remon::montecarlo::SimResult>(m, "SimResult")
        .def_readonly("mse_mean", &remon::montecarlo::SimResult::mse_mean)
        .def_readonly("aoi_mean", &remon::montecarlo::SimResult::aoi_mean)
        .def_readonly("mse_delay_mean", &remon::montecarlo::SimResult::mse_delay_mean)
        .def_readonly("mse_channel_mean", &remon::montecarlo::SimResult::mse_channel_mean)
        .def_readonly("mse_se", &remon::montecarlo::SimResult::mse_se)
        .def_readonly("aoi_se", &remon::montecarlo::SimResult::aoi_se)
        .def_readonly("mse_delay_se", &remon::montecarlo::SimResult::mse_delay_se)
        .def_readonly("mse_channel_se", &remon::montecarlo::SimResult::mse_channel_se)
        .def_readonly("cycles_observed", &remon::montecarlo::SimResult::cycles_observed);

    m.def("simulate", &remon::montecarlo::simulate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
}
