#pragma once

#include <cmath>
#include <cstdint>

namespace orbitforge {

/// Simulation time in integer nanoseconds since simulation start.
/// All scheduling arithmetic is exact; floating-point seconds appear only at
/// the API edges (configs, exports).
using SimNanos = std::int64_t;

inline constexpr SimNanos kNanosPerSecond = 1'000'000'000;
inline constexpr double kNanoToSec = 1.0e-9;

/// Seconds to nanoseconds, rounding half away from zero.
inline SimNanos sec_to_nanos(double seconds) {
    return static_cast<SimNanos>(std::llround(seconds * 1.0e9));
}

inline SimNanos min_to_nanos(double minutes) { return sec_to_nanos(minutes * 60.0); }

inline double nanos_to_sec(SimNanos t) { return static_cast<double>(t) * kNanoToSec; }

}  // namespace orbitforge
