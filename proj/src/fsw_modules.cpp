#include "orbitforge/fsw_modules.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "orbitforge/attitude.hpp"
#include "orbitforge/errors.hpp"

namespace orbitforge {

FswMode parse_fsw_mode(const std::string& name) {
    if (name == "standby") {
        return FswMode::standby;
    }
    if (name == "inertialPoint") {
        return FswMode::inertial_point;
    }
    if (name == "hillPoint") {
        return FswMode::hill_point;
    }
    throw ConfigError("unknown FSW mode '" + name +
                      "' (valid modes: standby, inertialPoint, hillPoint)");
}

std::string fsw_mode_name(FswMode mode) {
    switch (mode) {
        case FswMode::standby:
            return "standby";
        case FswMode::inertial_point:
            return "inertialPoint";
        case FswMode::hill_point:
            return "hillPoint";
    }
    return "standby";
}

// ---------------------------------------------------------------------------
// Guidance / control computations
// ---------------------------------------------------------------------------

AttRefPayload hill_point_reference(const NavTransPayload& nav, const EphemerisPayload& planet) {
    const Eigen::Vector3d r_rel = nav.r_BN_N - planet.r_N;
    const Eigen::Vector3d v_rel = nav.v_BN_N - planet.v_N;
    const double r = r_rel.norm();
    const Eigen::Vector3d h = r_rel.cross(v_rel);
    if (r == 0.0 || h.norm() <= 1.0e-8 * r * v_rel.norm() || h.norm() == 0.0) {
        throw SimError("undefined Hill frame (radial or degenerate trajectory)");
    }

    Eigen::Matrix3d dcm_RN;
    dcm_RN.row(0) = r_rel.normalized();      // i_r
    dcm_RN.row(2) = h.normalized();          // i_h
    dcm_RN.row(1) = dcm_RN.row(2).cross(dcm_RN.row(0));  // i_theta

    AttRefPayload ref;
    ref.sigma_RN = dcm_to_mrp(dcm_RN);
    ref.omega_RN_N = h / (r * r);
    // d/dt (h / r^2) along a Keplerian arc: h is constant, r changes at
    // rdot = (r_rel . v_rel) / r.
    ref.domega_RN_N = -2.0 * r_rel.dot(v_rel) / (r * r) * ref.omega_RN_N;
    return ref;
}

AttRefPayload inertial_point_reference(const Eigen::Vector3d& sigma_R0N) {
    AttRefPayload ref;
    ref.sigma_RN = sigma_R0N;
    return ref;
}

AttGuidPayload attitude_tracking_error(const NavAttPayload& nav, const AttRefPayload& ref) {
    const Eigen::Matrix3d dcm_BN = mrp_to_dcm(nav.sigma_BN);

    AttGuidPayload guid;
    guid.sigma_BR = mrp_relative(nav.sigma_BN, ref.sigma_RN);
    guid.omega_RN_B = dcm_BN * ref.omega_RN_N;
    guid.omega_BR_B = nav.omega_BN_B - guid.omega_RN_B;
    guid.domega_RN_B = dcm_BN * ref.domega_RN_N;
    return guid;
}

ControlOutput mrp_feedback_control(const AttGuidPayload& guid, const ControlGains& gains,
                                   const Eigen::Matrix3d& inertia, const Eigen::Vector3d& z,
                                   double dt_s) {
    if (!guid.sigma_BR.allFinite() || !guid.omega_BR_B.allFinite() ||
        !guid.omega_RN_B.allFinite()) {
        throw SimError("mrp_feedback_control: non-finite guidance input");
    }

    ControlOutput out;
    Eigen::Vector3d integral_feedback = Eigen::Vector3d::Zero();
    if (gains.Ki > 0.0) {
        const double limit = std::abs(gains.integral_limit);
        out.z_next = z + gains.K * guid.sigma_BR * dt_s;
        out.z_next = out.z_next.cwiseMax(-limit).cwiseMin(limit);
        integral_feedback = gains.Ki * out.z_next;
    }

    const Eigen::Vector3d omega_BN_B = guid.omega_BR_B + guid.omega_RN_B;
    out.cmd.torque_B = -gains.K * guid.sigma_BR -
                       gains.P * (guid.omega_BR_B + integral_feedback) +
                       omega_BN_B.cross(inertia * omega_BN_B);
    return out;
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

void HillPointModule::reset(SimNanos /*current_time*/) {
    if (!trans_nav_in.is_linked()) {
        throw ConfigError("required input transNavInMsg is not linked");
    }
}

void HillPointModule::update(SimNanos current_time) {
    att_ref_out_msg.write(hill_point_reference(trans_nav_in.read(), cel_body_in.read()),
                          current_time);
}

void InertialPointModule::update(SimNanos current_time) {
    att_ref_out_msg.write(inertial_point_reference(sigma_R0N), current_time);
}

void AttTrackingErrorModule::reset(SimNanos /*current_time*/) {
    if (!att_nav_in.is_linked()) {
        throw ConfigError("required input attNavInMsg is not linked");
    }
    if (!att_ref_in.is_linked()) {
        throw ConfigError("required input attRefInMsg is not linked");
    }
}

void AttTrackingErrorModule::update(SimNanos current_time) {
    att_guid_out_msg.write(attitude_tracking_error(att_nav_in.read(), att_ref_in.read()),
                           current_time);
}

void MrpFeedbackModule::reset_integral() { z_.setZero(); }

void MrpFeedbackModule::reset(SimNanos current_time) {
    if (!guid_in.is_linked()) {
        throw ConfigError("required input guidInMsg is not linked");
    }
    z_.setZero();
    has_run_ = false;
    last_update_ = current_time;
}

void MrpFeedbackModule::update(SimNanos current_time) {
    const double dt_s = has_run_ ? nanos_to_sec(current_time - last_update_) : 0.0;
    const ControlOutput out =
        mrp_feedback_control(guid_in.read(), gains, inertia, z_, dt_s);
    z_ = out.z_next;
    cmd_torque_out_msg.write(out.cmd, current_time);
    has_run_ = true;
    last_update_ = current_time;
}

// ---------------------------------------------------------------------------
// FswModel
// ---------------------------------------------------------------------------

void FswModel::register_with(SimContainer& container, SimNanos fsw_rate) {
    const ProcessHandle process = container.create_process(process_name);
    container.create_task(process, hill_task_name, fsw_rate);
    container.create_task(process, inertial_task_name, fsw_rate);
    container.create_task(process, control_task_name, fsw_rate);
    container.add_model_to_task(hill_task_name, hill_point);
    container.add_model_to_task(inertial_task_name, inertial_point);
    container.add_model_to_task(control_task_name, tracking_error);
    container.add_model_to_task(control_task_name, mrp_control);
    container.set_task_enabled(hill_task_name, false);
    container.set_task_enabled(inertial_task_name, false);
    container.set_task_enabled(control_task_name, false);

    tracking_error.att_ref_in.subscribe_to(att_ref_gateway);
    mrp_control.guid_in.subscribe_to(att_guid_gateway);
    zero_gateway_msgs();
}

void FswModel::zero_gateway_msgs() {
    att_ref_gateway.zero();
    att_guid_gateway.zero();
    cmd_torque_gateway.zero();
}

void FswModel::set_mode(SimContainer& container, FswMode mode) {
    switch (mode) {
        case FswMode::standby:
            container.set_task_enabled(hill_task_name, false);
            container.set_task_enabled(inertial_task_name, false);
            container.set_task_enabled(control_task_name, false);
            zero_gateway_msgs();
            break;
        case FswMode::inertial_point:
            container.set_task_enabled(hill_task_name, false);
            container.set_task_enabled(inertial_task_name, true);
            container.set_task_enabled(control_task_name, true);
            att_ref_gateway.retarget(&inertial_point.att_ref_out_msg);
            att_guid_gateway.retarget(&tracking_error.att_guid_out_msg);
            cmd_torque_gateway.retarget(&mrp_control.cmd_torque_out_msg);
            break;
        case FswMode::hill_point:
            container.set_task_enabled(hill_task_name, true);
            container.set_task_enabled(inertial_task_name, false);
            container.set_task_enabled(control_task_name, true);
            att_ref_gateway.retarget(&hill_point.att_ref_out_msg);
            att_guid_gateway.retarget(&tracking_error.att_guid_out_msg);
            cmd_torque_gateway.retarget(&mrp_control.cmd_torque_out_msg);
            break;
    }
    mrp_control.reset_integral();  // no windup carry-over across transitions
    mode_ = mode;
}

}  // namespace orbitforge
