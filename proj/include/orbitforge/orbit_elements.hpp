#pragma once

#include <Eigen/Core>

namespace orbitforge {

/// Classical (Keplerian) orbital elements. Elliptic orbits only: a > 0,
/// 0 <= e < 1. Angles in radians, normalized to [0, 2*pi).
struct ClassicElements {
    double a{0.0};     ///< semi-major axis, m
    double e{0.0};     ///< eccentricity
    double i{0.0};     ///< inclination
    double raan{0.0};  ///< right ascension of the ascending node
    double argp{0.0};  ///< argument of periapsis
    double f{0.0};     ///< true anomaly
};

struct RVState {
    Eigen::Vector3d r_N;  ///< m
    Eigen::Vector3d v_N;  ///< m/s
};

struct MeanMotionPeriod {
    double n;  ///< mean motion, rad/s
    double T;  ///< orbital period, s
};

/// n = sqrt(mu / a^3), T = 2*pi / n.
MeanMotionPeriod mean_motion_period(double mu, double a);

/// Map angle to [0, 2*pi).
double wrap_two_pi(double angle);

/// Elements -> inertial position/velocity via the perifocal frame and the
/// 3-1-3 rotation by (raan, i, argp).
RVState elem2rv(double mu, const ClassicElements& oe);

/// Inverse of elem2rv on the non-degenerate elliptic domain. Conventions for
/// near-degenerate orbits: e < 1e-12 forces argp = 0, i < 1e-12 forces
/// raan = 0; the true anomaly absorbs the remaining in-plane angle.
ClassicElements rv2elem(double mu, const Eigen::Vector3d& r_N, const Eigen::Vector3d& v_N);

}  // namespace orbitforge
