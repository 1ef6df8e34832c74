#include "orbitforge/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "orbitforge/ephemeris.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/rigid_body.hpp"

namespace orbitforge {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Sections may be written as a plain mapping or as a sequence of
/// single-key maps; normalize both shapes into one flat map node.
YAML::Node normalize_section(const YAML::Node& node, const std::string& section) {
    if (!node) {
        return YAML::Node(YAML::NodeType::Map);
    }
    if (node.IsMap()) {
        return node;
    }
    if (node.IsSequence()) {
        YAML::Node flat(YAML::NodeType::Map);
        for (const YAML::Node& item : node) {
            if (!item.IsMap()) {
                throw ConfigError(section + ": sequence entries must be single-key maps");
            }
            for (const auto& kv : item) {
                const std::string key = kv.first.as<std::string>();
                if (flat[key]) {
                    throw ConfigError(section + ": duplicate key '" + key + "'");
                }
                flat[key] = kv.second;
            }
        }
        return flat;
    }
    throw ConfigError(section + ": expected a mapping or a list of single-key maps");
}

template <typename T>
T require(const YAML::Node& section, const std::string& section_name, const std::string& key) {
    if (!section[key]) {
        throw ConfigError("missing required key '" + section_name + "." + key + "'");
    }
    try {
        return section[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + section_name + "." + key + "' has the wrong type");
    }
}

template <typename T>
std::optional<T> optional_value(const YAML::Node& section, const std::string& section_name,
                                const std::string& key) {
    if (!section[key]) {
        return std::nullopt;
    }
    try {
        return section[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + section_name + "." + key + "' has the wrong type");
    }
}

Eigen::Vector3d as_vector3(const YAML::Node& node, const std::string& path) {
    if (!node.IsSequence() || node.size() != 3) {
        throw ConfigError("key '" + path + "' must be a 3-element list");
    }
    return {node[0].as<double>(), node[1].as<double>(), node[2].as<double>()};
}

void collect_unknown_keys(const YAML::Node& section, const std::string& section_name,
                          const std::set<std::string>& known, std::vector<std::string>& out) {
    for (const auto& kv : section) {
        const std::string key = kv.first.as<std::string>();
        if (known.find(key) == known.end()) {
            out.push_back("unknown key '" + section_name + "." + key + "'");
        }
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(std::string("YAML parse error at line ") +
                          std::to_string(e.mark.line + 1) + ", column " +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) {
        throw ConfigError("config document must be a mapping of sections");
    }

    ScenarioConfig config;

    for (const auto& kv : root) {
        const std::string section = kv.first.as<std::string>();
        static const std::set<std::string> known_sections = {"simulation", "spacecraft",
                                                             "orbit",      "gravity",
                                                             "control",    "mode"};
        if (known_sections.find(section) == known_sections.end()) {
            config.warnings.push_back("unknown section '" + section + "'");
        }
    }

    // --- simulation -------------------------------------------------------
    const YAML::Node sim = normalize_section(root["simulation"], "simulation");
    collect_unknown_keys(sim, "simulation",
                         {"simulation_process_name", "process_name", "simulation_task_name",
                          "task_name", "simulation_time", "simulation_time_unit", "time_step",
                          "fsw_time_step", "num_data_points"},
                         config.warnings);

    if (auto v = optional_value<std::string>(sim, "simulation", "simulation_process_name")) {
        config.simulation.process_name = *v;
    }
    if (auto v = optional_value<std::string>(sim, "simulation", "process_name")) {
        config.simulation.process_name = *v;
    }
    if (auto v = optional_value<std::string>(sim, "simulation", "simulation_task_name")) {
        config.simulation.task_name = *v;
    }
    if (auto v = optional_value<std::string>(sim, "simulation", "task_name")) {
        config.simulation.task_name = *v;
    }

    config.simulation.simulation_time_s = require<double>(sim, "simulation", "simulation_time");
    const std::string unit =
        optional_value<std::string>(sim, "simulation", "simulation_time_unit").value_or("sec");
    if (unit == "min") {
        config.simulation.simulation_time_s *= 60.0;
    } else if (unit != "sec") {
        throw ConfigError("simulation.simulation_time_unit: unsupported unit '" + unit +
                          "' (supported: sec, min)");
    }
    config.simulation.time_step_s = require<double>(sim, "simulation", "time_step");
    config.simulation.fsw_time_step_s =
        optional_value<double>(sim, "simulation", "fsw_time_step");
    config.simulation.num_data_points =
        optional_value<std::int64_t>(sim, "simulation", "num_data_points");

    // --- spacecraft ---------------------------------------------------------
    const YAML::Node sc = normalize_section(root["spacecraft"], "spacecraft");
    collect_unknown_keys(sc, "spacecraft",
                         {"mass", "inertia", "name", "r_CN_N_init", "v_CN_N_init",
                          "sigma_BN_init", "omega_BN_B_init"},
                         config.warnings);

    config.spacecraft.mass_kg = require<double>(sc, "spacecraft", "mass");
    {
        const YAML::Node inertia = sc["inertia"];
        if (!inertia) {
            throw ConfigError("missing required key 'spacecraft.inertia'");
        }
        if (!inertia.IsSequence() || inertia.size() != 9) {
            throw ConfigError("key 'spacecraft.inertia' must be 9 numbers, row-major");
        }
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                config.spacecraft.inertia(r, c) = inertia[r * 3 + c].as<double>();
            }
        }
    }
    if (auto v = optional_value<std::string>(sc, "spacecraft", "name")) {
        config.spacecraft.name = *v;
    }
    if (sc["r_CN_N_init"]) {
        config.spacecraft.r_init_m = as_vector3(sc["r_CN_N_init"], "spacecraft.r_CN_N_init");
    }
    if (sc["v_CN_N_init"]) {
        config.spacecraft.v_init_mps = as_vector3(sc["v_CN_N_init"], "spacecraft.v_CN_N_init");
    }
    if (sc["sigma_BN_init"]) {
        config.spacecraft.sigma_bn_init =
            as_vector3(sc["sigma_BN_init"], "spacecraft.sigma_BN_init");
    }
    if (sc["omega_BN_B_init"]) {
        config.spacecraft.omega_bn_b_init_radps =
            as_vector3(sc["omega_BN_B_init"], "spacecraft.omega_BN_B_init");
    }

    // --- orbit (optional) ---------------------------------------------------
    if (root["orbit"]) {
        const YAML::Node orbit = normalize_section(root["orbit"], "orbit");
        collect_unknown_keys(orbit, "orbit",
                             {"a_km", "e", "i_deg", "raan_deg", "argp_deg", "f_deg"},
                             config.warnings);
        ClassicElements oe;
        oe.a = require<double>(orbit, "orbit", "a_km") * 1000.0;
        oe.e = require<double>(orbit, "orbit", "e");
        oe.i = require<double>(orbit, "orbit", "i_deg") * kDegToRad;
        oe.raan = require<double>(orbit, "orbit", "raan_deg") * kDegToRad;
        oe.argp = require<double>(orbit, "orbit", "argp_deg") * kDegToRad;
        oe.f = require<double>(orbit, "orbit", "f_deg") * kDegToRad;
        config.orbit = oe;
    }

    // --- gravity (optional) ---------------------------------------------------
    if (root["gravity"]) {
        const YAML::Node gravity = normalize_section(root["gravity"], "gravity");
        collect_unknown_keys(gravity, "gravity", {"bodies", "central", "use_j2", "epoch"},
                             config.warnings);
        if (gravity["bodies"]) {
            config.gravity.bodies = gravity["bodies"].as<std::vector<std::string>>();
        }
        if (auto v = optional_value<std::string>(gravity, "gravity", "central")) {
            config.gravity.central = *v;
        }
        if (auto v = optional_value<bool>(gravity, "gravity", "use_j2")) {
            config.gravity.use_j2 = *v;
        }
        if (auto v = optional_value<std::string>(gravity, "gravity", "epoch")) {
            config.gravity.epoch_utc = *v;
        }
    }
    if (config.gravity.bodies.empty()) {
        config.gravity.bodies = {"earth"};
    }

    // --- control (optional) ---------------------------------------------------
    if (root["control"]) {
        const YAML::Node control = normalize_section(root["control"], "control");
        collect_unknown_keys(control, "control", {"K", "Ki", "P", "integral_limit"},
                             config.warnings);
        if (auto v = optional_value<double>(control, "control", "K")) {
            config.control.K = *v;
        }
        if (auto v = optional_value<double>(control, "control", "Ki")) {
            config.control.Ki = *v;
        }
        if (auto v = optional_value<double>(control, "control", "P")) {
            config.control.P = *v;
        }
        if (auto v = optional_value<double>(control, "control", "integral_limit")) {
            config.control.integral_limit = std::abs(*v);  // stored as magnitude
        }
    }

    // --- mode (optional) ---------------------------------------------------
    if (root["mode"]) {
        config.mode = parse_fsw_mode(root["mode"].as<std::string>());
    }

    return config;
}

std::vector<std::string> validate_config(const ScenarioConfig& config) {
    std::vector<std::string> violations;

    if (config.simulation.time_step_s <= 0.0) {
        violations.push_back("simulation.time_step: must be positive, got " +
                             fmt17(config.simulation.time_step_s));
    }
    if (config.simulation.simulation_time_s < config.simulation.time_step_s) {
        violations.push_back("simulation.simulation_time: must be >= time_step");
    }
    if (config.simulation.fsw_time_step_s && *config.simulation.fsw_time_step_s <= 0.0) {
        violations.push_back("simulation.fsw_time_step: must be positive");
    }
    if (config.simulation.num_data_points && *config.simulation.num_data_points < 2) {
        violations.push_back("simulation.num_data_points: must be >= 2");
    }

    if (config.spacecraft.mass_kg <= 0.0) {
        violations.push_back("spacecraft.mass: must be positive, got " +
                             fmt17(config.spacecraft.mass_kg));
    }
    try {
        const InertiaCheck check = check_inertia(config.spacecraft.inertia);
        if (!check.valid) {
            violations.push_back(
                "spacecraft.inertia: " + check.report +
                " (the sum of any two diagonal elements must exceed the third)");
        }
    } catch (const std::exception& e) {
        violations.push_back(std::string("spacecraft.inertia: ") + e.what());
    }

    if (config.orbit) {
        if (config.orbit->a <= 0.0) {
            violations.push_back("orbit.a_km: semi-major axis must be positive");
        }
        if (config.orbit->e < 0.0 || config.orbit->e >= 1.0) {
            violations.push_back("orbit.e: eccentricity must satisfy 0 <= e < 1");
        }
    }

    for (const std::string& body : config.gravity.bodies) {
        if (body != "earth" && body != "sun") {
            violations.push_back("gravity.bodies: unsupported body '" + body + "'");
        }
    }
    if (std::find(config.gravity.bodies.begin(), config.gravity.bodies.end(),
                  config.gravity.central) == config.gravity.bodies.end()) {
        violations.push_back("gravity.central: '" + config.gravity.central +
                             "' is not in gravity.bodies");
    }
    try {
        parse_epoch(config.gravity.epoch_utc);
    } catch (const std::exception& e) {
        violations.push_back(std::string("gravity.epoch: ") + e.what());
    }

    if (config.control.K <= 0.0) {
        violations.push_back("control.K: must be positive");
    }
    if (config.control.P <= 0.0) {
        violations.push_back("control.P: must be positive");
    }

    return violations;
}

ScenarioConfig load_config(const std::string& yaml_text) {
    ScenarioConfig config = parse_config(yaml_text);
    const std::vector<std::string> violations = validate_config(config);
    if (!violations.empty()) {
        std::string joined = "configuration invalid:";
        for (const std::string& v : violations) {
            joined += "\n  " + v;
        }
        throw ConfigError(joined);
    }
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_config(text.str());
}

std::string emit_config_yaml(const ScenarioConfig& config) {
    std::ostringstream out;
    out << "simulation:\n";
    out << "  process_name: " << config.simulation.process_name << "\n";
    out << "  task_name: " << config.simulation.task_name << "\n";
    out << "  simulation_time: " << fmt17(config.simulation.simulation_time_s) << "\n";
    out << "  simulation_time_unit: sec\n";
    out << "  time_step: " << fmt17(config.simulation.time_step_s) << "\n";
    if (config.simulation.fsw_time_step_s) {
        out << "  fsw_time_step: " << fmt17(*config.simulation.fsw_time_step_s) << "\n";
    }
    if (config.simulation.num_data_points) {
        out << "  num_data_points: " << *config.simulation.num_data_points << "\n";
    }

    out << "spacecraft:\n";
    out << "  mass: " << fmt17(config.spacecraft.mass_kg) << "\n";
    out << "  inertia: [";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out << fmt17(config.spacecraft.inertia(r, c));
            if (r * 3 + c < 8) {
                out << ", ";
            }
        }
    }
    out << "]\n";
    out << "  name: " << config.spacecraft.name << "\n";
    const auto emit_vec = [&out](const char* key, const Eigen::Vector3d& v) {
        out << "  " << key << ": [" << fmt17(v.x()) << ", " << fmt17(v.y()) << ", "
            << fmt17(v.z()) << "]\n";
    };
    if (config.spacecraft.r_init_m) {
        emit_vec("r_CN_N_init", *config.spacecraft.r_init_m);
    }
    if (config.spacecraft.v_init_mps) {
        emit_vec("v_CN_N_init", *config.spacecraft.v_init_mps);
    }
    if (config.spacecraft.sigma_bn_init) {
        emit_vec("sigma_BN_init", *config.spacecraft.sigma_bn_init);
    }
    if (config.spacecraft.omega_bn_b_init_radps) {
        emit_vec("omega_BN_B_init", *config.spacecraft.omega_bn_b_init_radps);
    }

    if (config.orbit) {
        out << "orbit:\n";
        out << "  a_km: " << fmt17(config.orbit->a / 1000.0) << "\n";
        out << "  e: " << fmt17(config.orbit->e) << "\n";
        out << "  i_deg: " << fmt17(config.orbit->i / kDegToRad) << "\n";
        out << "  raan_deg: " << fmt17(config.orbit->raan / kDegToRad) << "\n";
        out << "  argp_deg: " << fmt17(config.orbit->argp / kDegToRad) << "\n";
        out << "  f_deg: " << fmt17(config.orbit->f / kDegToRad) << "\n";
    }

    out << "gravity:\n";
    out << "  bodies: [";
    for (std::size_t k = 0; k < config.gravity.bodies.size(); ++k) {
        out << config.gravity.bodies[k];
        if (k + 1 < config.gravity.bodies.size()) {
            out << ", ";
        }
    }
    out << "]\n";
    out << "  central: " << config.gravity.central << "\n";
    out << "  use_j2: " << (config.gravity.use_j2 ? "true" : "false") << "\n";
    out << "  epoch: \"" << config.gravity.epoch_utc << "\"\n";

    out << "control:\n";
    out << "  K: " << fmt17(config.control.K) << "\n";
    out << "  Ki: " << fmt17(config.control.Ki) << "\n";
    out << "  P: " << fmt17(config.control.P) << "\n";
    out << "  integral_limit: " << fmt17(config.control.integral_limit) << "\n";

    if (config.mode) {
        out << "mode: " << fsw_mode_name(*config.mode) << "\n";
    }
    return out.str();
}

}  // namespace orbitforge
