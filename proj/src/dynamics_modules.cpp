#include "orbitforge/dynamics_modules.hpp"

#include "orbitforge/errors.hpp"

namespace orbitforge {

// ---------------------------------------------------------------------------
// ExtForceTorqueModule
// ---------------------------------------------------------------------------

void ExtForceTorqueModule::reset(SimNanos current_time) {
    CmdTorquePayload staged;
    staged.torque_B = external_torque_B;
    staged_torque_out_msg.write(staged, current_time);
}

void ExtForceTorqueModule::update(SimNanos current_time) {
    CmdTorquePayload staged;
    staged.torque_B = external_torque_B + cmd_torque_in.read().torque_B;
    staged_torque_out_msg.write(staged, current_time);
}

// ---------------------------------------------------------------------------
// SpacecraftModule
// ---------------------------------------------------------------------------

InputPort<PlanetStatePayload>& SpacecraftModule::add_gravity_body(const GravityBody& body) {
    gravity_.push_back(GravityConnection{body, {}});
    return gravity_.back().state_in;
}

void SpacecraftModule::reset(SimNanos current_time) {
    if (mass_props.m_hub <= 0.0) {
        throw ConfigError("spacecraft hub mass must be positive, got " +
                          std::to_string(mass_props.m_hub));
    }
    const InertiaCheck check = check_inertia(mass_props.inertia);
    if (!check.valid) {
        throw ConfigError("spacecraft inertia rejected: " + check.report);
    }
    state_ = state_init;
    has_run_ = false;
    last_update_ = current_time;
    publish(current_time);
}

void SpacecraftModule::update(SimNanos current_time) {
    if (has_run_ && current_time > last_update_) {
        std::vector<GravityBodyState> bodies;
        bodies.reserve(gravity_.size());
        for (const GravityConnection& g : gravity_) {
            const PlanetStatePayload planet = g.state_in.read();
            bodies.push_back(GravityBodyState{g.body, planet.r_N, planet.v_N});
        }
        const double dt = nanos_to_sec(current_time - last_update_);
        state_ = propagate_state(state_, nanos_to_sec(last_update_), dt, mass_props.inertia,
                                 bodies, ext_torque_in.read().torque_B);
    }
    has_run_ = true;
    last_update_ = current_time;
    publish(current_time);
}

void SpacecraftModule::publish(SimNanos current_time) {
    SCStatesPayload out;
    out.r_BN_N = state_.r_CN_N;
    out.v_BN_N = state_.v_CN_N;
    out.sigma_BN = state_.sigma_BN;
    out.omega_BN_B = state_.omega_BN_B;
    sc_state_out_msg.write(out, current_time);
}

// ---------------------------------------------------------------------------
// SimpleNavModule
// ---------------------------------------------------------------------------

void SimpleNavModule::reset(SimNanos /*current_time*/) {
    if (!sc_state_in.is_linked()) {
        throw ConfigError("required input scStateInMsg is not linked");
    }
}

void SimpleNavModule::update(SimNanos current_time) {
    const SCStatesPayload truth = sc_state_in.read();

    NavTransPayload trans;
    trans.r_BN_N = truth.r_BN_N;
    trans.v_BN_N = truth.v_BN_N;
    trans.time = current_time;
    trans_out_msg.write(trans, current_time);

    NavAttPayload att;
    att.sigma_BN = truth.sigma_BN;
    att.omega_BN_B = truth.omega_BN_B;
    att_out_msg.write(att, current_time);
}

// ---------------------------------------------------------------------------
// CelestialEphemerisModule
// ---------------------------------------------------------------------------

MessageSlot<PlanetStatePayload>& CelestialEphemerisModule::add_body(const GravityBody& body) {
    bodies_.push_back(body);
    out_msgs_.emplace_back();
    return out_msgs_.back();
}

MessageSlot<PlanetStatePayload>& CelestialEphemerisModule::planet_state_out_msg(
    std::size_t index) {
    if (index >= out_msgs_.size()) {
        throw ConfigError("celestialEphemeris: no body registered at index " +
                          std::to_string(index));
    }
    return out_msgs_[index];
}

void CelestialEphemerisModule::reset(SimNanos current_time) { publish(current_time); }

void CelestialEphemerisModule::update(SimNanos current_time) { publish(current_time); }

void CelestialEphemerisModule::publish(SimNanos current_time) {
    std::vector<EphemerisRecord> records;
    records.reserve(bodies_.size());
    for (const GravityBody& body : bodies_) {
        records.push_back(ephemeris_state(body, epoch, current_time));
    }
    if (!zero_base.empty()) {
        records = zero_base_recenter(std::move(records), zero_base);
    }
    for (std::size_t k = 0; k < records.size(); ++k) {
        PlanetStatePayload payload;
        payload.r_N = records[k].r_N;
        payload.v_N = records[k].v_N;
        out_msgs_[k].write(payload, current_time);
    }
}

// ---------------------------------------------------------------------------
// EphemerisConverterModule
// ---------------------------------------------------------------------------

std::size_t EphemerisConverterModule::add_planet_input(
    const MessageSlot<PlanetStatePayload>& source) {
    inputs_.emplace_back();
    inputs_.back().subscribe_to(source);
    out_msgs_.emplace_back();
    return inputs_.size() - 1;
}

MessageSlot<EphemerisPayload>& EphemerisConverterModule::ephem_out_msg(std::size_t index) {
    if (index >= out_msgs_.size()) {
        throw ConfigError("ephemerisConverter: no channel at index " + std::to_string(index));
    }
    return out_msgs_[index];
}

void EphemerisConverterModule::reset(SimNanos current_time) {
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
        if (!inputs_[k].is_linked()) {
            throw ConfigError("converter channel " + std::to_string(k) + " is not linked");
        }
    }
    update(current_time);
}

void EphemerisConverterModule::update(SimNanos current_time) {
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
        const PlanetStatePayload planet = inputs_[k].read();
        EphemerisPayload ephem;
        ephem.r_N = planet.r_N;
        ephem.v_N = planet.v_N;
        ephem.epoch_offset = current_time;
        out_msgs_[k].write(ephem, current_time);
    }
}

}  // namespace orbitforge
