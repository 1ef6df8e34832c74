#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

namespace orbitforge {

/// Static description of a gravitating body.
struct GravityBody {
    std::string name;
    double mu{0.0};         ///< gravitational parameter, m^3/s^2
    double req{0.0};        ///< reference equatorial radius, m
    double j2{0.0};         ///< first zonal harmonic coefficient
    bool is_central{false};
    bool use_j2{false};
};

/// Body description plus its current state in the working frame.
struct GravityBodyState {
    GravityBody body;
    Eigen::Vector3d r_N{0.0, 0.0, 0.0};
    Eigen::Vector3d v_N{0.0, 0.0, 0.0};
};

/// Total gravitational acceleration at r_N: central point-mass term, the J2
/// zonal perturbation when enabled on the central body, and third-body
/// differential terms for every non-central body with a known position.
/// Exactly one body must be flagged central.
Eigen::Vector3d gravity_accel(std::span<const GravityBodyState> bodies,
                              const Eigen::Vector3d& r_N);

}  // namespace orbitforge
