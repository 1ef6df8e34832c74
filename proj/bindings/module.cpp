#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbitforge/attitude.hpp"
#include "orbitforge/config.hpp"
#include "orbitforge/ephemeris.hpp"
#include "orbitforge/exporters.hpp"
#include "orbitforge/messaging.hpp"
#include "orbitforge/monte_carlo.hpp"
#include "orbitforge/orbit_elements.hpp"
#include "orbitforge/rigid_body.hpp"
#include "orbitforge/scenario.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace orbitforge;

namespace {

py::dict bundle_to_dict(const OutputBundle& outputs) {
    py::dict result;
    for (const auto& [name, series] : outputs) {
        py::dict entry;
        entry["t"] = py::array_t<double>(static_cast<py::ssize_t>(series.t_s.size()),
                                         series.t_s.data());
        entry["columns"] = series.columns;
        py::array_t<double> values({static_cast<py::ssize_t>(series.values.size()),
                                    static_cast<py::ssize_t>(series.row_count())});
        auto view = values.mutable_unchecked<2>();
        for (py::ssize_t c = 0; c < view.shape(0); ++c) {
            for (py::ssize_t k = 0; k < view.shape(1); ++k) {
                view(c, k) = series.values[static_cast<std::size_t>(c)]
                                          [static_cast<std::size_t>(k)];
            }
        }
        entry["values"] = std::move(values);
        result[py::str(name)] = std::move(entry);
    }
    return result;
}

OutputBundle run_scenario_impl(const std::string& config_yaml, const std::string& kind,
                               const std::optional<std::string>& mode,
                               std::optional<double> stop_s, const std::string& csv,
                               const std::string& jsonl) {
    const ScenarioConfig config = load_config(config_yaml);
    const auto scenario = build_scenario(config, parse_scenario_kind(kind));
    std::optional<FswMode> fsw_mode;
    if (mode) {
        fsw_mode = parse_fsw_mode(*mode);
    }
    const double stop = stop_s.value_or(config.simulation.simulation_time_s);
    OutputBundle outputs = scenario->run(fsw_mode, sec_to_nanos(stop));
    if (!csv.empty()) {
        export_state_csv(outputs, csv);
    }
    if (!jsonl.empty()) {
        export_telemetry_jsonl(*scenario, jsonl);
    }
    return outputs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orbitforge: modular spacecraft GN&C simulation";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SimError>(m, "SimulationError", PyExc_RuntimeError);

    // time
    m.def("sec_to_nanos", &sec_to_nanos, py::arg("seconds"));
    m.def("min_to_nanos", &min_to_nanos, py::arg("minutes"));
    m.def("nanos_to_sec", &nanos_to_sec, py::arg("nanos"));
    m.def("sampling_time", &sampling_time, py::arg("t_final_ns"), py::arg("dt_sim_ns"),
          py::arg("num_points"),
          "Recorder sampling period (ns) for num_points log points.");

    // orbital elements
    py::class_<ClassicElements>(m, "ClassicElements")
        .def(py::init<>())
        .def_readwrite("a", &ClassicElements::a)
        .def_readwrite("e", &ClassicElements::e)
        .def_readwrite("i", &ClassicElements::i)
        .def_readwrite("raan", &ClassicElements::raan)
        .def_readwrite("argp", &ClassicElements::argp)
        .def_readwrite("f", &ClassicElements::f)
        .def("__repr__", [](const ClassicElements& oe) {
            return "ClassicElements(a=" + std::to_string(oe.a) + ", e=" + std::to_string(oe.e) +
                   ", i=" + std::to_string(oe.i) + ", raan=" + std::to_string(oe.raan) +
                   ", argp=" + std::to_string(oe.argp) + ", f=" + std::to_string(oe.f) + ")";
        });

    m.def(
        "mean_motion_period",
        [](double mu, double a) {
            const MeanMotionPeriod mp = mean_motion_period(mu, a);
            return py::make_tuple(mp.n, mp.T);
        },
        py::arg("mu"), py::arg("a"), "Returns (mean_motion, period).");
    m.def(
        "elem2rv",
        [](double mu, const ClassicElements& oe) {
            const RVState rv = elem2rv(mu, oe);
            return py::make_tuple(rv.r_N, rv.v_N);
        },
        py::arg("mu"), py::arg("elements"), "Returns (r_N, v_N) in meters, m/s.");
    m.def("rv2elem", &rv2elem, py::arg("mu"), py::arg("r_N"), py::arg("v_N"));
    m.def("wrap_two_pi", &wrap_two_pi, py::arg("angle"));

    // attitude
    m.def("mrp_to_dcm", &mrp_to_dcm, py::arg("sigma"));
    m.def("dcm_to_mrp", &dcm_to_mrp, py::arg("dcm"));
    m.def("mrp_shadow", &mrp_shadow, py::arg("sigma"));
    m.def("mrp_switch_to_inner", &mrp_switch_to_inner, py::arg("sigma"));
    m.def("mrp_rate", &mrp_rate, py::arg("sigma"), py::arg("omega"));
    m.def("mrp_compose", &mrp_compose, py::arg("first"), py::arg("second"));
    m.def("mrp_relative", &mrp_relative, py::arg("sigma_BN"), py::arg("sigma_RN"));

    // rigid body
    m.def(
        "check_inertia",
        [](const Eigen::Matrix3d& inertia) {
            const InertiaCheck check = check_inertia(inertia);
            return py::make_tuple(check.valid, check.report);
        },
        py::arg("inertia"), "Returns (valid, report).");
    m.def("rigid_body_omega_dot", &rigid_body_omega_dot, py::arg("inertia"), py::arg("omega"),
          py::arg("torque_B"));

    // gravity / ephemeris
    py::class_<GravityBody>(m, "GravityBody")
        .def_readonly("name", &GravityBody::name)
        .def_readonly("mu", &GravityBody::mu)
        .def_readonly("req", &GravityBody::req)
        .def_readonly("j2", &GravityBody::j2)
        .def_readwrite("is_central", &GravityBody::is_central)
        .def_readwrite("use_j2", &GravityBody::use_j2);
    m.def("create_body", &create_body, py::arg("name"));
    m.def(
        "ephemeris_state",
        [](const GravityBody& body, const std::string& epoch_text, SimNanos t) {
            const EphemerisRecord rec = ephemeris_state(body, parse_epoch(epoch_text), t);
            return py::make_tuple(rec.body, rec.r_N, rec.v_N);
        },
        py::arg("body"), py::arg("epoch"), py::arg("t_ns"),
        "Returns (name, r_N, v_N) in the Earth-centered working frame.");
    m.def(
        "epoch_offset_seconds",
        [](const std::string& text) { return parse_epoch(text).offset_seconds; },
        py::arg("text"), "Seconds from the J2000 reference epoch.");

    m.attr("MU_EARTH") = constants::mu_earth;
    m.attr("REQ_EARTH") = constants::req_earth;
    m.attr("J2_EARTH") = constants::j2_earth;
    m.attr("MU_SUN") = constants::mu_sun;
    m.attr("AU") = constants::astronomical_unit;

    // config + scenarios
    m.def(
        "validate_config",
        [](const std::string& yaml_text) { return validate_config(parse_config(yaml_text)); },
        py::arg("yaml_text"), "List of violations; empty means valid.");
    m.def(
        "normalize_config",
        [](const std::string& yaml_text) { return emit_config_yaml(load_config(yaml_text)); },
        py::arg("yaml_text"), "Load and re-emit a config in the plain-mapping shape.");
    m.def(
        "show_execution_order",
        [](const std::string& yaml_text, const std::string& kind) {
            const auto scenario =
                build_scenario(load_config(yaml_text), parse_scenario_kind(kind));
            return scenario->container().show_execution_order();
        },
        py::arg("yaml_text"), py::arg("kind"));
    m.def(
        "run_scenario",
        [](const std::string& yaml_text, const std::string& kind,
           const std::optional<std::string>& mode, std::optional<double> stop_s,
           const std::string& csv, const std::string& jsonl) {
            return bundle_to_dict(
                run_scenario_impl(yaml_text, kind, mode, stop_s, csv, jsonl));
        },
        py::arg("yaml_text"), py::arg("kind"), py::arg("mode") = std::nullopt,
        py::arg("stop_s") = std::nullopt, py::arg("csv") = std::string(),
        py::arg("jsonl") = std::string(),
        "Build and execute a scenario; returns {series: {t, columns, values}}.");

    // Monte Carlo
    m.def(
        "execute_simulations",
        [](const std::string& yaml_text, const std::string& kind, int runs,
           const std::string& archive, std::uint64_t seed, int workers,
           const std::vector<std::string>& dispersions, bool force) {
            McPlan plan;
            plan.base_config = load_config(yaml_text);
            plan.kind = parse_scenario_kind(kind);
            plan.execution_count = runs;
            plan.archive_dir = archive;
            plan.master_seed = seed;
            plan.workers = workers;
            plan.force = force;
            for (const std::string& text : dispersions) {
                plan.dispersions.push_back(parse_dispersion(text));
            }
            const McArchive result = execute_simulations(plan);
            py::dict out;
            out["manifest"] = manifest_path(result.dir);
            int ok = 0;
            for (const McRunResult& run : result.runs) {
                ok += run.status == "ok" ? 1 : 0;
            }
            out["ok"] = ok;
            out["count"] = result.execution_count;
            return out;
        },
        py::arg("yaml_text"), py::arg("kind"), py::arg("runs"), py::arg("archive"),
        py::arg("seed") = 0, py::arg("workers") = 1,
        py::arg("dispersions") = std::vector<std::string>{}, py::arg("force") = false);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
