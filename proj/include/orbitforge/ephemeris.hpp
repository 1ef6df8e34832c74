#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "orbitforge/gravity.hpp"
#include "orbitforge/sim_time.hpp"

namespace orbitforge {

namespace constants {
// Pinned physical constants (GGM03S-class Earth values, DE-class Sun mu).
inline constexpr double mu_earth = 3.986004418e14;      ///< m^3/s^2
inline constexpr double req_earth = 6378136.3;          ///< m
inline constexpr double j2_earth = 1.0826269e-3;
inline constexpr double mu_sun = 1.32712440018e20;      ///< m^3/s^2
inline constexpr double req_sun = 6.957e8;              ///< m
inline constexpr double astronomical_unit = 1.495978707e11;  ///< m
inline constexpr double sun_orbit_period_s = 365.25 * 86400.0;
}  // namespace constants

/// Calendar epoch in the form "YYYY Mon D HH:MM:SS.sss (UTC)".
/// offset_seconds counts from the J2000 reference (2000 Jan 1 12:00:00.000),
/// with no leap-second handling.
struct EpochSpec {
    std::string utc_string;
    double offset_seconds{0.0};
};

EpochSpec parse_epoch(const std::string& text);

/// State of a celestial body at one simulation time, in the working frame.
struct EphemerisRecord {
    std::string body;
    Eigen::Vector3d r_N{0.0, 0.0, 0.0};
    Eigen::Vector3d v_N{0.0, 0.0, 0.0};
    SimNanos epoch_offset{0};
};

/// Supported bodies: "earth" (central by default) and "sun". Constants are
/// the pinned values above; unknown names are rejected with the list of
/// supported bodies.
GravityBody create_body(const std::string& name);

/// Analytic ephemeris in the Earth-centered working frame: Earth is pinned
/// at the origin; the Sun follows a circular orbit of one astronomical unit
/// in the ecliptic-aligned xy plane with period 365.25 d and phase zero at
/// the epoch.
EphemerisRecord ephemeris_state(const GravityBody& body, const EpochSpec& epoch, SimNanos t);

/// Subtract the base body's state from every record; the base becomes
/// exactly zero. Plain vector subtraction, bitwise reproducible.
std::vector<EphemerisRecord> zero_base_recenter(std::vector<EphemerisRecord> records,
                                                const std::string& base);

}  // namespace orbitforge
