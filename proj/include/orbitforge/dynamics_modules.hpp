#pragma once

#include <deque>
#include <string>
#include <vector>

#include "orbitforge/ephemeris.hpp"
#include "orbitforge/messaging.hpp"
#include "orbitforge/module.hpp"
#include "orbitforge/payloads.hpp"
#include "orbitforge/propagation.hpp"
#include "orbitforge/rigid_body.hpp"

namespace orbitforge {

/// Stages the external control torque for the spacecraft hub. Runs at the
/// highest dynamics priority so the torque commanded on the previous step is
/// in place before the hub integrates.
class ExtForceTorqueModule : public SimModule {
public:
    ExtForceTorqueModule() { model_tag = "extForceTorque"; }

    InputPort<CmdTorquePayload> cmd_torque_in;           ///< optional command input
    Eigen::Vector3d external_torque_B{0.0, 0.0, 0.0};    ///< constant bias torque, N*m
    MessageSlot<CmdTorquePayload> staged_torque_out_msg;

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;
};

/// Spacecraft hub: rigid-body translational and rotational state, integrated
/// with fixed-step RK4 at the dynamics task rate.
class SpacecraftModule : public SimModule {
public:
    SpacecraftModule() { model_tag = "spacecraft"; }

    MassProperties mass_props;
    SpacecraftState state_init;

    /// Register a gravitating body; returns the input port its state message
    /// must be wired to (the central body at the frame origin may stay
    /// unlinked).
    InputPort<PlanetStatePayload>& add_gravity_body(const GravityBody& body);

    InputPort<CmdTorquePayload> ext_torque_in;  ///< staged effector torque
    MessageSlot<SCStatesPayload> sc_state_out_msg;

    const SpacecraftState& state() const { return state_; }

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;

private:
    struct GravityConnection {
        GravityBody body;
        InputPort<PlanetStatePayload> state_in;
    };

    void publish(SimNanos current_time);

    std::deque<GravityConnection> gravity_;
    SpacecraftState state_;
    SimNanos last_update_{0};
    bool has_run_{false};
};

/// Truth pass-through navigation (noise hooks intentionally absent).
class SimpleNavModule : public SimModule {
public:
    SimpleNavModule() { model_tag = "simpleNav"; }

    InputPort<SCStatesPayload> sc_state_in;
    MessageSlot<NavTransPayload> trans_out_msg;
    MessageSlot<NavAttPayload> att_out_msg;

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;
};

/// Analytic celestial-body state publisher (the SPICE stand-in). Publishes
/// a zero-base-recentered state message per registered body each firing, and
/// primes them at reset so the hub's first integration already sees valid
/// geometry.
class CelestialEphemerisModule : public SimModule {
public:
    CelestialEphemerisModule() { model_tag = "celestialEphemeris"; }

    EpochSpec epoch;
    std::string zero_base;  ///< empty = no recentering

    /// Returns the body's state output slot.
    MessageSlot<PlanetStatePayload>& add_body(const GravityBody& body);

    MessageSlot<PlanetStatePayload>& planet_state_out_msg(std::size_t index);
    const std::vector<GravityBody>& bodies() const { return bodies_; }

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;

private:
    void publish(SimNanos current_time);

    std::vector<GravityBody> bodies_;
    std::deque<MessageSlot<PlanetStatePayload>> out_msgs_;
};

/// Re-publishes planet state messages as ephemeris messages for the flight
/// software side.
class EphemerisConverterModule : public SimModule {
public:
    EphemerisConverterModule() { model_tag = "ephemerisConverter"; }

    /// Wires a new converter channel to `source`; channels are indexed in
    /// registration order.
    std::size_t add_planet_input(const MessageSlot<PlanetStatePayload>& source);

    MessageSlot<EphemerisPayload>& ephem_out_msg(std::size_t index);
    std::size_t channel_count() const { return inputs_.size(); }

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;

private:
    std::deque<InputPort<PlanetStatePayload>> inputs_;
    std::deque<MessageSlot<EphemerisPayload>> out_msgs_;
};

}  // namespace orbitforge
