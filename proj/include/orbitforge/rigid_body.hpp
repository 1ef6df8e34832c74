#pragma once

#include <Eigen/Core>
#include <string>

namespace orbitforge {

/// Rigid-hub mass properties (inertia about the center of mass, body frame).
struct MassProperties {
    double m_hub{0.0};  ///< kg
    Eigen::Matrix3d inertia{Eigen::Matrix3d::Zero()};  ///< kg*m^2
};

struct InertiaCheck {
    bool valid{false};
    std::string report;  ///< names the violated principal axis when invalid
};

/// Physical-consistency check: the inertia must be symmetric and positive
/// definite, and each pair of principal moments must sum to at least the
/// third (I_i + I_j >= I_k). Non-diagonal input is diagonalized first.
/// Asymmetric input is rejected outright.
InertiaCheck check_inertia(const Eigen::Matrix3d& inertia);

/// Euler's equation: omega_dot = I^-1 (-omega x (I omega) + torque_B).
Eigen::Vector3d rigid_body_omega_dot(const Eigen::Matrix3d& inertia,
                                     const Eigen::Vector3d& omega,
                                     const Eigen::Vector3d& torque_B);

}  // namespace orbitforge
