#pragma once

#include <Eigen/Core>

#include "orbitforge/sim_time.hpp"

namespace orbitforge {

// Message payloads are plain value types; a default-constructed payload is
// the zero value readers observe on unlinked or never-written ports.

/// Spacecraft hub truth state. The body frame origin coincides with the
/// center of mass, so r_BN_N == r_CN_N.
struct SCStatesPayload {
    Eigen::Vector3d r_BN_N{0.0, 0.0, 0.0};      ///< inertial position, m
    Eigen::Vector3d v_BN_N{0.0, 0.0, 0.0};      ///< inertial velocity, m/s
    Eigen::Vector3d sigma_BN{0.0, 0.0, 0.0};    ///< MRP attitude, body/inertial
    Eigen::Vector3d omega_BN_B{0.0, 0.0, 0.0};  ///< body rate, rad/s
};

/// Translational navigation solution.
struct NavTransPayload {
    Eigen::Vector3d r_BN_N{0.0, 0.0, 0.0};
    Eigen::Vector3d v_BN_N{0.0, 0.0, 0.0};
    SimNanos time{0};
};

/// Attitude navigation solution.
struct NavAttPayload {
    Eigen::Vector3d sigma_BN{0.0, 0.0, 0.0};
    Eigen::Vector3d omega_BN_B{0.0, 0.0, 0.0};
};

/// Attitude reference: desired frame R relative to inertial N.
struct AttRefPayload {
    Eigen::Vector3d sigma_RN{0.0, 0.0, 0.0};
    Eigen::Vector3d omega_RN_N{0.0, 0.0, 0.0};   ///< rad/s
    Eigen::Vector3d domega_RN_N{0.0, 0.0, 0.0};  ///< rad/s^2
};

/// Attitude guidance (tracking error): body B relative to reference R.
struct AttGuidPayload {
    Eigen::Vector3d sigma_BR{0.0, 0.0, 0.0};
    Eigen::Vector3d omega_BR_B{0.0, 0.0, 0.0};
    Eigen::Vector3d omega_RN_B{0.0, 0.0, 0.0};
    Eigen::Vector3d domega_RN_B{0.0, 0.0, 0.0};
};

/// Commanded body-frame control torque, N*m.
struct CmdTorquePayload {
    Eigen::Vector3d torque_B{0.0, 0.0, 0.0};
};

/// Celestial body state in the working inertial frame (zero-base applied).
struct PlanetStatePayload {
    Eigen::Vector3d r_N{0.0, 0.0, 0.0};
    Eigen::Vector3d v_N{0.0, 0.0, 0.0};
};

/// Converted ephemeris output consumed by guidance modules.
struct EphemerisPayload {
    Eigen::Vector3d r_N{0.0, 0.0, 0.0};
    Eigen::Vector3d v_N{0.0, 0.0, 0.0};
    SimNanos epoch_offset{0};  ///< simulation time the state is valid at
};

}  // namespace orbitforge
