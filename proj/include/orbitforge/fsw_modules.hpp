#pragma once

#include <string>

#include "orbitforge/kernel.hpp"
#include "orbitforge/messaging.hpp"
#include "orbitforge/module.hpp"
#include "orbitforge/payloads.hpp"

namespace orbitforge {

/// Flight software operating mode.
enum class FswMode { standby, inertial_point, hill_point };

FswMode parse_fsw_mode(const std::string& name);
std::string fsw_mode_name(FswMode mode);

/// MRP feedback gains. Ki <= 0 disables integral action (upstream sign
/// convention); integral_limit is a per-axis clamp magnitude.
struct ControlGains {
    double K{0.0};
    double Ki{-1.0};
    double P{0.0};
    double integral_limit{0.0};
};

// --- pure guidance/control computations -----------------------------------

/// Hill-frame pointing reference from the spacecraft and planet states.
/// Axes: i_r radial out, i_theta along-track, i_h orbit normal. Throws on a
/// degenerate (radial or zero-radius) trajectory.
AttRefPayload hill_point_reference(const NavTransPayload& nav, const EphemerisPayload& planet);

/// Constant inertial pointing reference (zero rates).
AttRefPayload inertial_point_reference(const Eigen::Vector3d& sigma_R0N);

/// Attitude tracking error of body B with respect to reference R, with the
/// reference rates mapped into body-frame components.
AttGuidPayload attitude_tracking_error(const NavAttPayload& nav, const AttRefPayload& ref);

struct ControlOutput {
    CmdTorquePayload cmd;
    Eigen::Vector3d z_next{0.0, 0.0, 0.0};  ///< updated integral state
};

/// MRP feedback control torque:
///   z'  = clamp(z + K sigma_BR dt)      (only when Ki > 0)
///   u   = -K sigma_BR - P (omega_BR_B + Ki z') + omega_BN_B x (I omega_BN_B)
ControlOutput mrp_feedback_control(const AttGuidPayload& guid, const ControlGains& gains,
                                   const Eigen::Matrix3d& inertia, const Eigen::Vector3d& z,
                                   double dt_s);

// --- flight software modules -----------------------------------------------

class HillPointModule : public SimModule {
public:
    HillPointModule() { model_tag = "hillPoint"; }

    InputPort<NavTransPayload> trans_nav_in;
    InputPort<EphemerisPayload> cel_body_in;  ///< optional; unlinked = body at origin
    MessageSlot<AttRefPayload> att_ref_out_msg;

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;
};

class InertialPointModule : public SimModule {
public:
    InertialPointModule() { model_tag = "inertialPoint"; }

    Eigen::Vector3d sigma_R0N{0.0, 0.0, 0.0};
    MessageSlot<AttRefPayload> att_ref_out_msg;

    void update(SimNanos current_time) override;
};

class AttTrackingErrorModule : public SimModule {
public:
    AttTrackingErrorModule() { model_tag = "attTrackingError"; }

    InputPort<NavAttPayload> att_nav_in;
    InputPort<AttRefPayload> att_ref_in;
    MessageSlot<AttGuidPayload> att_guid_out_msg;

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;
};

class MrpFeedbackModule : public SimModule {
public:
    MrpFeedbackModule() { model_tag = "mrpFeedback"; }

    ControlGains gains;
    Eigen::Matrix3d inertia{Eigen::Matrix3d::Zero()};

    InputPort<AttGuidPayload> guid_in;
    MessageSlot<CmdTorquePayload> cmd_torque_out_msg;

    const Eigen::Vector3d& integral_state() const { return z_; }
    void reset_integral();

    void reset(SimNanos current_time) override;
    void update(SimNanos current_time) override;

private:
    Eigen::Vector3d z_{0.0, 0.0, 0.0};
    SimNanos last_update_{0};
    bool has_run_{false};
};

/// Flight software model: guidance/control modules, the gateway messages
/// giving downstream consumers fixed input points, and mode switching.
///
/// Task layout (all at the FSW rate): one task per guidance source plus one
/// control task. Tasks start disabled; set_mode() enables the active set,
/// re-points the gateways, zeroes them on standby, and resets the integral
/// state on every transition.
class FswModel {
public:
    HillPointModule hill_point;
    InertialPointModule inertial_point;
    AttTrackingErrorModule tracking_error;
    MrpFeedbackModule mrp_control;

    MessageSlot<AttRefPayload> att_ref_gateway;
    MessageSlot<AttGuidPayload> att_guid_gateway;
    MessageSlot<CmdTorquePayload> cmd_torque_gateway;

    std::string process_name = "fswProcess";
    std::string hill_task_name = "hillPointTask";
    std::string inertial_task_name = "inertialPointTask";
    std::string control_task_name = "mrpControlTask";

    /// Creates the FSW process and tasks (disabled) and wires the internal
    /// chain: guidance -> att_ref gateway -> tracking error -> att_guid
    /// gateway -> control -> cmd_torque gateway.
    void register_with(SimContainer& container, SimNanos fsw_rate);

    void set_mode(SimContainer& container, FswMode mode);
    FswMode mode() const { return mode_; }

    void zero_gateway_msgs();

private:
    FswMode mode_{FswMode::standby};
};

}  // namespace orbitforge
