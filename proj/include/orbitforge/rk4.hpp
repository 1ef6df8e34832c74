#pragma once

#include <utility>

namespace orbitforge {

/// One classical 4th-order Runge-Kutta step of size dt (dt > 0).
///
/// `deriv(t, y)` returns dy/dt; State needs addition and scaling by double
/// (doubles and Eigen vectors both qualify).
template <typename State, typename Deriv>
State rk4_step(Deriv&& deriv, const State& y, double t, double dt) {
    const State k1 = deriv(t, y);
    const State k2 = deriv(t + 0.5 * dt, State(y + (0.5 * dt) * k1));
    const State k3 = deriv(t + 0.5 * dt, State(y + (0.5 * dt) * k2));
    const State k4 = deriv(t + dt, State(y + dt * k3));
    return State(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace orbitforge
