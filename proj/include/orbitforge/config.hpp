#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitforge/fsw_modules.hpp"
#include "orbitforge/orbit_elements.hpp"

namespace orbitforge {

struct SimulationSettings {
    std::string process_name = "simulation_process";
    std::string task_name = "simulation_task";
    double simulation_time_s{0.0};
    double time_step_s{0.0};
    std::optional<double> fsw_time_step_s;
    std::optional<std::int64_t> num_data_points;
};

struct SpacecraftSettings {
    double mass_kg{0.0};
    Eigen::Matrix3d inertia{Eigen::Matrix3d::Zero()};
    std::string name = "bsk_sat";
    // Optional state overrides; when absent, r/v come from the orbit block
    // and attitude starts at rest. These are the Monte Carlo
    // dispersion-path targets.
    std::optional<Eigen::Vector3d> r_init_m;
    std::optional<Eigen::Vector3d> v_init_mps;
    std::optional<Eigen::Vector3d> sigma_bn_init;
    std::optional<Eigen::Vector3d> omega_bn_b_init_radps;
};

struct GravitySettings {
    std::vector<std::string> bodies;
    std::string central = "earth";
    bool use_j2{false};
    std::string epoch_utc = "2000 Jan 1 11:59:28.000 (UTC)";
};

/// Normalized scenario configuration. YAML accepts both the list-of-
/// single-key-maps document shape and a plain mapping; suffixed keys carry
/// units (km, deg) which are converted to SI/radians at load.
struct ScenarioConfig {
    SimulationSettings simulation;
    SpacecraftSettings spacecraft;
    std::optional<ClassicElements> orbit;
    GravitySettings gravity;
    std::optional<FswMode> mode;
    ControlGains control{3.5, -1.0, 30.0, 0.2};  // MRP feedback defaults
    std::vector<std::string> warnings;           // unknown keys, etc.
};

/// Parse without semantic validation (shape/type/missing-key errors throw).
ScenarioConfig parse_config(const std::string& yaml_text);

/// Semantic violations, each prefixed with its config path. Empty = valid.
std::vector<std::string> validate_config(const ScenarioConfig& config);

/// parse + validate; throws ConfigError on the first violation set.
ScenarioConfig load_config(const std::string& yaml_text);
ScenarioConfig load_config_file(const std::string& path);

/// Emit the plain-mapping YAML shape; load_config(emit_config_yaml(c))
/// reproduces c.
std::string emit_config_yaml(const ScenarioConfig& config);

}  // namespace orbitforge
