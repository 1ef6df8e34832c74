#pragma once

#include <Eigen/Core>
#include <span>

#include "orbitforge/gravity.hpp"

namespace orbitforge {

/// Spacecraft hub truth state (center of mass C in inertial N, body B).
struct SpacecraftState {
    Eigen::Vector3d r_CN_N{0.0, 0.0, 0.0};      ///< m
    Eigen::Vector3d v_CN_N{0.0, 0.0, 0.0};      ///< m/s
    Eigen::Vector3d sigma_BN{0.0, 0.0, 0.0};    ///< MRP
    Eigen::Vector3d omega_BN_B{0.0, 0.0, 0.0};  ///< rad/s
};

using StateVector = Eigen::Matrix<double, 12, 1>;

StateVector pack_state(const SpacecraftState& state);
SpacecraftState unpack_state(const StateVector& x);

/// One fixed-step RK4 integration of the coupled translational/rotational
/// equations of motion over [t, t + dt]. The MRP shadow-set switch is
/// applied after the step so |sigma|^2 <= 1 always holds; a non-finite
/// result raises an error stamped with the failure time.
SpacecraftState propagate_state(const SpacecraftState& state, double t, double dt,
                                const Eigen::Matrix3d& inertia,
                                std::span<const GravityBodyState> gravity_bodies,
                                const Eigen::Vector3d& torque_B);

}  // namespace orbitforge
