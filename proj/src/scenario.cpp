#include "orbitforge/scenario.hpp"

#include <algorithm>

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_elements.hpp"

namespace orbitforge {

ScenarioKind parse_scenario_kind(const std::string& name) {
    if (name == "basicOrbit") {
        return ScenarioKind::basic_orbit;
    }
    if (name == "earthOrbit") {
        return ScenarioKind::earth_orbit;
    }
    if (name == "sunEarth") {
        return ScenarioKind::sun_earth;
    }
    if (name == "attitudeControl") {
        return ScenarioKind::attitude_control;
    }
    throw ConfigError("unknown scenario kind '" + name +
                      "' (valid: basicOrbit, earthOrbit, sunEarth, attitudeControl)");
}

std::string scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::basic_orbit:
            return "basicOrbit";
        case ScenarioKind::earth_orbit:
            return "earthOrbit";
        case ScenarioKind::sun_earth:
            return "sunEarth";
        case ScenarioKind::attitude_control:
            return "attitudeControl";
    }
    return "basicOrbit";
}

namespace {

GravityBody make_body(const std::string& name, const ScenarioConfig& config) {
    GravityBody body = create_body(name);
    body.is_central = (name == config.gravity.central);
    body.use_j2 = body.is_central && config.gravity.use_j2;
    return body;
}

}  // namespace

ScenarioInstance::ScenarioInstance(const ScenarioConfig& config, ScenarioKind kind)
    : config_(config), kind_(kind) {
    epoch_ = parse_epoch(config_.gravity.epoch_utc);
    sampling_ = config_.simulation.num_data_points
                    ? sampling_time(sec_to_nanos(config_.simulation.simulation_time_s),
                                    sec_to_nanos(config_.simulation.time_step_s),
                                    *config_.simulation.num_data_points)
                    : 0;
    sc_state_recorder_ = Recorder<SCStatesPayload>(sampling_);
    sc_state_recorder_.model_tag = "scStateRecorder";
    att_guid_recorder_.model_tag = "attGuidRecorder";
    cmd_torque_recorder_.model_tag = "cmdTorqueRecorder";

    switch (kind_) {
        case ScenarioKind::basic_orbit:
            build_basic_orbit();
            break;
        case ScenarioKind::earth_orbit:
            build_earth_orbit();
            break;
        case ScenarioKind::sun_earth:
            build_sun_earth();
            break;
        case ScenarioKind::attitude_control:
            build_attitude_control();
            break;
    }
}

void ScenarioInstance::configure_spacecraft() {
    spacecraft_.model_tag = config_.spacecraft.name;
    spacecraft_.mass_props.m_hub = config_.spacecraft.mass_kg;
    spacecraft_.mass_props.inertia = config_.spacecraft.inertia;

    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    if (config_.orbit && central_mu_ > 0.0) {
        const RVState rv = elem2rv(central_mu_, *config_.orbit);
        r = rv.r_N;
        v = rv.v_N;
    }
    spacecraft_.state_init.r_CN_N = config_.spacecraft.r_init_m.value_or(r);
    spacecraft_.state_init.v_CN_N = config_.spacecraft.v_init_mps.value_or(v);
    spacecraft_.state_init.sigma_BN =
        config_.spacecraft.sigma_bn_init.value_or(Eigen::Vector3d::Zero());
    spacecraft_.state_init.omega_BN_B =
        config_.spacecraft.omega_bn_b_init_radps.value_or(Eigen::Vector3d::Zero());

    registered_modules_.push_back(&spacecraft_);
}

void ScenarioInstance::attach_state_recorder(const std::string& task_name) {
    sc_state_recorder_.input().subscribe_to(spacecraft_.sc_state_out_msg);
    container_.add_recorder_to_task(task_name, sc_state_recorder_);
}

void ScenarioInstance::build_basic_orbit() {
    const ProcessHandle process = container_.create_process(config_.simulation.process_name);
    const std::string& task = config_.simulation.task_name;
    container_.create_task(process, task, sec_to_nanos(config_.simulation.time_step_s));

    configure_spacecraft();
    container_.add_model_to_task(task, spacecraft_);
    attach_state_recorder(task);
}

void ScenarioInstance::build_earth_orbit() {
    const ProcessHandle process = container_.create_process(config_.simulation.process_name);
    const std::string& task = config_.simulation.task_name;
    container_.create_task(process, task, sec_to_nanos(config_.simulation.time_step_s));

    const GravityBody earth = make_body("earth", config_);
    central_mu_ = earth.mu;
    telemetry_bodies_ = {earth};
    zero_base_ = config_.gravity.central;

    configure_spacecraft();
    spacecraft_.add_gravity_body(earth);  // central body pinned at the origin
    container_.add_model_to_task(task, spacecraft_);
    attach_state_recorder(task);
}

void ScenarioInstance::build_sun_earth() {
    const ProcessHandle process = container_.create_process(config_.simulation.process_name);
    const std::string& task = config_.simulation.task_name;
    container_.create_task(process, task, sec_to_nanos(config_.simulation.time_step_s));

    // The kind requires both bodies regardless of the configured list.
    std::vector<std::string> names = config_.gravity.bodies;
    for (const char* required : {"sun", "earth"}) {
        if (std::find(names.begin(), names.end(), required) == names.end()) {
            names.emplace_back(required);
        }
    }

    celestial_.epoch = epoch_;
    celestial_.zero_base = config_.gravity.central;
    zero_base_ = config_.gravity.central;

    for (std::size_t k = 0; k < names.size(); ++k) {
        const GravityBody body = make_body(names[k], config_);
        if (body.is_central) {
            central_mu_ = body.mu;
        }
        telemetry_bodies_.push_back(body);
        MessageSlot<PlanetStatePayload>& planet_msg = celestial_.add_body(body);
        spacecraft_.add_gravity_body(body).subscribe_to(planet_msg);
        ephem_converter_.add_planet_input(planet_msg);
    }
    configure_spacecraft();  // after body setup so mu is known for elem2rv

    container_.add_model_to_task(task, spacecraft_);
    container_.add_model_to_task(task, celestial_);
    container_.add_model_to_task(task, ephem_converter_);
    registered_modules_.push_back(&celestial_);
    registered_modules_.push_back(&ephem_converter_);
    attach_state_recorder(task);
}

void ScenarioInstance::build_attitude_control() {
    if (!config_.orbit && !config_.spacecraft.r_init_m) {
        throw ConfigError(
            "attitudeControl requires an orbit block or spacecraft.r_CN_N_init");
    }

    const ProcessHandle dynamics = container_.create_process("dynamicsProcess");
    const std::string dyn_task = "dynamicsTask";
    container_.create_task(dynamics, dyn_task, sec_to_nanos(config_.simulation.time_step_s));

    celestial_.epoch = epoch_;
    celestial_.zero_base = config_.gravity.central;
    zero_base_ = config_.gravity.central;

    std::size_t central_channel = 0;
    for (std::size_t k = 0; k < config_.gravity.bodies.size(); ++k) {
        const GravityBody body = make_body(config_.gravity.bodies[k], config_);
        if (body.is_central) {
            central_mu_ = body.mu;
            central_channel = k;
        }
        telemetry_bodies_.push_back(body);
        MessageSlot<PlanetStatePayload>& planet_msg = celestial_.add_body(body);
        spacecraft_.add_gravity_body(body).subscribe_to(planet_msg);
        ephem_converter_.add_planet_input(planet_msg);
    }

    configure_spacecraft();
    spacecraft_.ext_torque_in.subscribe_to(ext_torque_.staged_torque_out_msg);
    simple_nav_.sc_state_in.subscribe_to(spacecraft_.sc_state_out_msg);

    // Reference priority stack: effector above hub above celestial states
    // above the converter, navigation last.
    container_.add_model_to_task(dyn_task, ext_torque_, 300);
    container_.add_model_to_task(dyn_task, spacecraft_, 201);
    container_.add_model_to_task(dyn_task, celestial_, 200);
    container_.add_model_to_task(dyn_task, ephem_converter_, 199);
    container_.add_model_to_task(dyn_task, simple_nav_, 109);
    registered_modules_.push_back(&ext_torque_);
    registered_modules_.push_back(&celestial_);
    registered_modules_.push_back(&ephem_converter_);
    registered_modules_.push_back(&simple_nav_);

    fsw_ = std::make_unique<FswModel>();
    fsw_->register_with(container_, sec_to_nanos(config_.simulation.fsw_time_step_s.value_or(0.5)));
    fsw_->hill_point.trans_nav_in.subscribe_to(simple_nav_.trans_out_msg);
    fsw_->hill_point.cel_body_in.subscribe_to(ephem_converter_.ephem_out_msg(central_channel));
    fsw_->tracking_error.att_nav_in.subscribe_to(simple_nav_.att_out_msg);
    fsw_->mrp_control.gains = config_.control;
    fsw_->mrp_control.inertia = config_.spacecraft.inertia;
    ext_torque_.cmd_torque_in.subscribe_to(fsw_->cmd_torque_gateway);
    registered_modules_.push_back(&fsw_->hill_point);
    registered_modules_.push_back(&fsw_->inertial_point);
    registered_modules_.push_back(&fsw_->tracking_error);
    registered_modules_.push_back(&fsw_->mrp_control);

    attach_state_recorder(dyn_task);
    // Guidance/command recorders live on the dynamics task so standby runs
    // still log (zeroed gateways) at the dynamics rate.
    att_guid_recorder_.input().subscribe_to(fsw_->att_guid_gateway);
    cmd_torque_recorder_.input().subscribe_to(fsw_->cmd_torque_gateway);
    container_.add_recorder_to_task(dyn_task, att_guid_recorder_);
    container_.add_recorder_to_task(dyn_task, cmd_torque_recorder_);
}

void ScenarioInstance::set_mode(FswMode mode) {
    if (!fsw_) {
        throw ConfigError("set_mode: scenario '" + scenario_kind_name(kind_) +
                          "' has no flight software model");
    }
    fsw_->set_mode(container_, mode);
}

OutputBundle ScenarioInstance::run(std::optional<FswMode> mode, SimNanos stop) {
    if (mode && !fsw_) {
        throw ConfigError("run: mode '" + fsw_mode_name(*mode) +
                          "' requested but the scenario has no flight software model");
    }
    if (fsw_) {
        fsw_->set_mode(container_, mode.value_or(config_.mode.value_or(FswMode::standby)));
    }
    container_.initialize_simulation();
    container_.configure_stop_time(stop);
    container_.execute_simulation();
    executed_ = true;
    return pull_outputs();
}

namespace {

TimeSeries vector_series(const std::vector<double>& t_s,
                         const std::vector<Eigen::Vector3d>& data,
                         std::vector<std::string> columns) {
    TimeSeries series;
    series.t_s = t_s;
    series.columns = std::move(columns);
    series.values.assign(3, std::vector<double>(data.size()));
    for (std::size_t k = 0; k < data.size(); ++k) {
        series.values[0][k] = data[k].x();
        series.values[1][k] = data[k].y();
        series.values[2][k] = data[k].z();
    }
    return series;
}

}  // namespace

OutputBundle ScenarioInstance::pull_outputs() const {
    if (!executed_) {
        throw SimError("pull_outputs called before execute_simulation completed");
    }
    OutputBundle bundle;

    const std::vector<double> t_s = sc_state_recorder_.times_sec();
    const std::vector<SCStatesPayload>& states = sc_state_recorder_.records();

    std::vector<Eigen::Vector3d> r(states.size()), v(states.size()), sigma(states.size()),
        omega(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        r[k] = states[k].r_BN_N;
        v[k] = states[k].v_BN_N;
        sigma[k] = states[k].sigma_BN;
        omega[k] = states[k].omega_BN_B;
    }
    bundle["r_BN_N"] = vector_series(t_s, r, {"rx_m", "ry_m", "rz_m"});
    bundle["v_BN_N"] = vector_series(t_s, v, {"vx_mps", "vy_mps", "vz_mps"});
    bundle["sigma_BN"] = vector_series(t_s, sigma, {"sigma1", "sigma2", "sigma3"});
    bundle["omega_BN_B"] = vector_series(t_s, omega, {"wx_radps", "wy_radps", "wz_radps"});

    if (central_mu_ > 0.0) {
        TimeSeries elements;
        elements.t_s = t_s;
        elements.columns = {"a_m", "e", "i_rad", "raan_rad", "argp_rad", "f_rad"};
        elements.values.assign(6, std::vector<double>(states.size()));
        for (std::size_t k = 0; k < states.size(); ++k) {
            const ClassicElements oe = rv2elem(central_mu_, r[k], v[k]);
            elements.values[0][k] = oe.a;
            elements.values[1][k] = oe.e;
            elements.values[2][k] = oe.i;
            elements.values[3][k] = oe.raan;
            elements.values[4][k] = oe.argp;
            elements.values[5][k] = oe.f;
        }
        bundle["elements"] = std::move(elements);
    }

    if (fsw_) {
        const std::vector<double> t_fsw = att_guid_recorder_.times_sec();
        const std::vector<AttGuidPayload>& guid = att_guid_recorder_.records();
        std::vector<Eigen::Vector3d> sigma_br(guid.size()), omega_br(guid.size());
        for (std::size_t k = 0; k < guid.size(); ++k) {
            sigma_br[k] = guid[k].sigma_BR;
            omega_br[k] = guid[k].omega_BR_B;
        }
        bundle["sigma_BR"] = vector_series(t_fsw, sigma_br, {"sigma1", "sigma2", "sigma3"});
        bundle["omega_BR_B"] =
            vector_series(t_fsw, omega_br, {"wx_radps", "wy_radps", "wz_radps"});

        const std::vector<CmdTorquePayload>& torque = cmd_torque_recorder_.records();
        std::vector<Eigen::Vector3d> u(torque.size());
        for (std::size_t k = 0; k < torque.size(); ++k) {
            u[k] = torque[k].torque_B;
        }
        bundle["cmd_torque"] =
            vector_series(cmd_torque_recorder_.times_sec(), u, {"ux_Nm", "uy_Nm", "uz_Nm"});
    }
    return bundle;
}

std::vector<std::string> ScenarioInstance::orphan_modules() const {
    std::vector<std::string> orphans;
    for (const SimModule* module : registered_modules_) {
        if (!container_.module_is_tasked(*module)) {
            orphans.push_back(module->model_tag);
        }
    }
    return orphans;
}

std::unique_ptr<ScenarioInstance> build_scenario(const ScenarioConfig& config,
                                                 ScenarioKind kind) {
    return std::make_unique<ScenarioInstance>(config, kind);
}

}  // namespace orbitforge
