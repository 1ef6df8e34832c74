#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbitforge/config.hpp"
#include "orbitforge/dynamics_modules.hpp"
#include "orbitforge/fsw_modules.hpp"
#include "orbitforge/kernel.hpp"

namespace orbitforge {

/// Scenario presets mirroring the progression of reference scenarios:
/// hub only; hub + Earth gravity from orbital elements; + Sun and ephemeris
/// conversion with Earth recentering; full dynamics + FSW attitude stack.
enum class ScenarioKind { basic_orbit, earth_orbit, sun_earth, attitude_control };

ScenarioKind parse_scenario_kind(const std::string& name);
std::string scenario_kind_name(ScenarioKind kind);

/// One named time series: shared time column plus named value columns
/// (column-major storage).
struct TimeSeries {
    std::vector<double> t_s;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;

    std::size_t row_count() const { return t_s.size(); }
};

/// Fixed key set: r_BN_N, v_BN_N, sigma_BN, omega_BN_B, elements (when a
/// central body provides mu), and sigma_BR / omega_BR_B / cmd_torque when a
/// flight software model is present.
using OutputBundle = std::map<std::string, TimeSeries>;

/// A wired, runnable scenario: container, dynamics stack, optional FSW
/// stack, and the recorder set. Construct through build_scenario().
class ScenarioInstance {
public:
    ScenarioInstance(const ScenarioConfig& config, ScenarioKind kind);
    ScenarioInstance(const ScenarioInstance&) = delete;
    ScenarioInstance& operator=(const ScenarioInstance&) = delete;

    SimContainer& container() { return container_; }
    const SimContainer& container() const { return container_; }
    const ScenarioConfig& config() const { return config_; }
    ScenarioKind kind() const { return kind_; }

    bool has_fsw() const { return fsw_ != nullptr; }
    FswModel* fsw() { return fsw_.get(); }
    const FswModel* fsw() const { return fsw_.get(); }
    const SpacecraftModule& spacecraft() const { return spacecraft_; }

    void set_mode(FswMode mode);

    /// The standardized run pattern: apply mode (FSW scenarios), initialize,
    /// configure the stop time, execute, pull outputs.
    OutputBundle run(std::optional<FswMode> mode, SimNanos stop);

    /// Named time series from the recorders; valid after a completed run.
    OutputBundle pull_outputs() const;

    bool executed() const { return executed_; }

    const Recorder<SCStatesPayload>& state_recorder() const { return sc_state_recorder_; }
    SimNanos recorder_sampling() const { return sampling_; }

    /// Gravitational parameter of the central body (0 when no gravity).
    double central_mu() const { return central_mu_; }

    /// Celestial bodies for telemetry export, with the epoch and base frame
    /// used by the analytic ephemeris.
    const std::vector<GravityBody>& celestial_bodies() const { return telemetry_bodies_; }
    const EpochSpec& epoch() const { return epoch_; }
    const std::string& zero_base() const { return zero_base_; }

    /// Registered modules that ended up assigned to no task (configuration
    /// lint; empty for scenarios built here).
    std::vector<std::string> orphan_modules() const;

private:
    void build_basic_orbit();
    void build_earth_orbit();
    void build_sun_earth();
    void build_attitude_control();
    void configure_spacecraft();
    void attach_state_recorder(const std::string& task_name);

    ScenarioConfig config_;
    ScenarioKind kind_;
    SimContainer container_;

    SpacecraftModule spacecraft_;
    ExtForceTorqueModule ext_torque_;
    SimpleNavModule simple_nav_;
    CelestialEphemerisModule celestial_;
    EphemerisConverterModule ephem_converter_;
    std::unique_ptr<FswModel> fsw_;

    Recorder<SCStatesPayload> sc_state_recorder_;
    Recorder<AttGuidPayload> att_guid_recorder_;
    Recorder<CmdTorquePayload> cmd_torque_recorder_;

    std::vector<SimModule*> registered_modules_;
    std::vector<GravityBody> telemetry_bodies_;
    EpochSpec epoch_;
    std::string zero_base_;
    double central_mu_{0.0};
    SimNanos sampling_{0};
    bool executed_{false};
};

/// Wire the module set for `kind` from a validated configuration.
std::unique_ptr<ScenarioInstance> build_scenario(const ScenarioConfig& config,
                                                 ScenarioKind kind);

}  // namespace orbitforge
