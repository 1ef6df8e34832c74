#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orbitforge/attitude.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/gravity.hpp"
#include "orbitforge/orbit_elements.hpp"
#include "orbitforge/propagation.hpp"
#include "orbitforge/rigid_body.hpp"
#include "orbitforge/rk4.hpp"

namespace orbitforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateTol = 1.0e-12;  // rv2elem e / i degeneracy cutoff
}  // namespace

// ---------------------------------------------------------------------------
// Orbital elements
// ---------------------------------------------------------------------------

double wrap_two_pi(double angle) {
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    return wrapped;
}

MeanMotionPeriod mean_motion_period(double mu, double a) {
    if (mu <= 0.0) {
        throw ConfigError("mean_motion_period: mu must be positive");
    }
    if (a <= 0.0) {
        throw ConfigError("mean_motion_period: semi-major axis must be positive");
    }
    const double n = std::sqrt(mu / (a * a * a));
    return MeanMotionPeriod{n, kTwoPi / n};
}

RVState elem2rv(double mu, const ClassicElements& oe) {
    if (mu <= 0.0) {
        throw ConfigError("elem2rv: mu must be positive");
    }
    if (oe.a <= 0.0) {
        throw ConfigError("elem2rv: semi-major axis must be positive, got " +
                          std::to_string(oe.a));
    }
    if (oe.e < 0.0 || oe.e >= 1.0) {
        throw ConfigError("elem2rv: eccentricity must satisfy 0 <= e < 1, got " +
                          std::to_string(oe.e));
    }

    const double p = oe.a * (1.0 - oe.e * oe.e);  // semilatus rectum
    const double r_mag = p / (1.0 + oe.e * std::cos(oe.f));

    const Eigen::Vector3d r_pf{r_mag * std::cos(oe.f), r_mag * std::sin(oe.f), 0.0};
    const double vs = std::sqrt(mu / p);
    const Eigen::Vector3d v_pf{-vs * std::sin(oe.f), vs * (oe.e + std::cos(oe.f)), 0.0};

    const Eigen::Matrix3d dcm_NP =
        (Eigen::AngleAxisd(oe.raan, Eigen::Vector3d::UnitZ()) *
         Eigen::AngleAxisd(oe.i, Eigen::Vector3d::UnitX()) *
         Eigen::AngleAxisd(oe.argp, Eigen::Vector3d::UnitZ()))
            .toRotationMatrix();

    return RVState{dcm_NP * r_pf, dcm_NP * v_pf};
}

ClassicElements rv2elem(double mu, const Eigen::Vector3d& r_N, const Eigen::Vector3d& v_N) {
    if (mu <= 0.0) {
        throw ConfigError("rv2elem: mu must be positive");
    }
    const double r_mag = r_N.norm();
    const double v_mag = v_N.norm();
    const Eigen::Vector3d h = r_N.cross(v_N);
    if (r_mag == 0.0 || h.norm() <= 1.0e-8 * r_mag * v_mag) {
        throw SimError("rv2elem: rectilinear trajectory, elements undefined");
    }

    const double energy = 0.5 * v_mag * v_mag - mu / r_mag;
    if (energy >= 0.0) {
        throw SimError("rv2elem: trajectory is not elliptic (specific energy >= 0)");
    }

    ClassicElements oe;
    oe.a = -mu / (2.0 * energy);

    const Eigen::Vector3d e_vec =
        ((v_mag * v_mag - mu / r_mag) * r_N - r_N.dot(v_N) * v_N) / mu;
    oe.e = e_vec.norm();

    const Eigen::Vector3d h_hat = h.normalized();
    oe.i = std::acos(std::clamp(h_hat.z(), -1.0, 1.0));

    const bool equatorial = oe.i < kDegenerateTol;
    const bool circular = oe.e < kDegenerateTol;

    // Ascending node direction (undefined when equatorial).
    const Eigen::Vector3d node = Eigen::Vector3d::UnitZ().cross(h);
    const Eigen::Vector3d r_hat = r_N / r_mag;

    if (equatorial) {
        oe.raan = 0.0;
        if (circular) {
            oe.argp = 0.0;
            oe.f = wrap_two_pi(std::atan2(r_N.y(), r_N.x()));  // true longitude
        } else {
            const Eigen::Vector3d e_hat = e_vec / oe.e;
            oe.argp = wrap_two_pi(std::atan2(e_vec.y(), e_vec.x()));  // longitude of periapsis
            oe.f = wrap_two_pi(std::atan2(h_hat.dot(e_hat.cross(r_hat)), e_hat.dot(r_hat)));
        }
    } else {
        const Eigen::Vector3d n_hat = node.normalized();
        oe.raan = wrap_two_pi(std::atan2(node.y(), node.x()));
        if (circular) {
            oe.argp = 0.0;
            // argument of latitude plays the role of the true anomaly
            oe.f = wrap_two_pi(std::atan2(h_hat.dot(n_hat.cross(r_hat)), n_hat.dot(r_hat)));
        } else {
            const Eigen::Vector3d e_hat = e_vec / oe.e;
            oe.argp = wrap_two_pi(std::atan2(h_hat.dot(n_hat.cross(e_hat)), n_hat.dot(e_hat)));
            oe.f = wrap_two_pi(std::atan2(h_hat.dot(e_hat.cross(r_hat)), e_hat.dot(r_hat)));
        }
    }
    return oe;
}

// ---------------------------------------------------------------------------
// Gravity
// ---------------------------------------------------------------------------

Eigen::Vector3d gravity_accel(std::span<const GravityBodyState> bodies,
                              const Eigen::Vector3d& r_N) {
    const GravityBodyState* central = nullptr;
    for (const GravityBodyState& b : bodies) {
        if (b.body.is_central) {
            if (central != nullptr) {
                throw ConfigError("gravity_accel: more than one central body");
            }
            central = &b;
        }
    }
    if (central == nullptr) {
        throw ConfigError("gravity_accel: no central body registered");
    }

    const Eigen::Vector3d rel = r_N - central->r_N;
    const double r = rel.norm();
    if (r == 0.0) {
        throw SimError("gravity_accel: zero radius from central body");
    }

    Eigen::Vector3d accel = -central->body.mu / (r * r) * rel.normalized();

    if (central->body.use_j2 && central->body.j2 != 0.0) {
        // First zonal harmonic, axisymmetric about the central body's z axis.
        const double coeff =
            -1.5 * central->body.j2 * central->body.mu * central->body.req *
            central->body.req / std::pow(r, 4);
        const double zr2 = (rel.z() / r) * (rel.z() / r);
        accel.x() += coeff * (rel.x() / r) * (1.0 - 5.0 * zr2);
        accel.y() += coeff * (rel.y() / r) * (1.0 - 5.0 * zr2);
        accel.z() += coeff * (rel.z() / r) * (3.0 - 5.0 * zr2);
    }

    for (const GravityBodyState& b : bodies) {
        if (b.body.is_central) {
            continue;
        }
        const Eigen::Vector3d rho = b.r_N - central->r_N;  // third body from central
        if (rho.norm() == 0.0) {
            continue;  // state not yet published this run
        }
        const Eigen::Vector3d d = b.r_N - r_N;  // third body from spacecraft
        accel += b.body.mu * (d / std::pow(d.norm(), 3) - rho / std::pow(rho.norm(), 3));
    }
    return accel;
}

// ---------------------------------------------------------------------------
// MRP attitude algebra
// ---------------------------------------------------------------------------

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0.0, -v.z(), v.y(),
        v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

Eigen::Vector3d mrp_shadow(const Eigen::Vector3d& sigma) {
    const double s2 = sigma.squaredNorm();
    if (s2 == 0.0) {
        return sigma;
    }
    return -sigma / s2;
}

Eigen::Vector3d mrp_switch_to_inner(const Eigen::Vector3d& sigma) {
    return sigma.squaredNorm() > 1.0 ? mrp_shadow(sigma) : sigma;
}

Eigen::Vector3d mrp_rate(const Eigen::Vector3d& sigma, const Eigen::Vector3d& omega) {
    const double s2 = sigma.squaredNorm();
    const Eigen::Matrix3d b_mat = (1.0 - s2) * Eigen::Matrix3d::Identity() +
                                  2.0 * skew(sigma) + 2.0 * sigma * sigma.transpose();
    return 0.25 * b_mat * omega;
}

Eigen::Matrix3d mrp_to_dcm(const Eigen::Vector3d& sigma) {
    const double s2 = sigma.squaredNorm();
    const Eigen::Matrix3d tilde = skew(sigma);
    const double denom = (1.0 + s2) * (1.0 + s2);
    return Eigen::Matrix3d::Identity() +
           (8.0 * tilde * tilde - 4.0 * (1.0 - s2) * tilde) / denom;
}

Eigen::Vector4d dcm_to_quaternion(const Eigen::Matrix3d& dcm) {
    // Shepperd's method: pick the largest intermediate to stay well away
    // from the small-divisor cases.
    const double trace = dcm.trace();
    Eigen::Vector4d sq;
    sq(0) = (1.0 + trace) / 4.0;
    sq(1) = (1.0 + 2.0 * dcm(0, 0) - trace) / 4.0;
    sq(2) = (1.0 + 2.0 * dcm(1, 1) - trace) / 4.0;
    sq(3) = (1.0 + 2.0 * dcm(2, 2) - trace) / 4.0;

    int imax = 0;
    sq.maxCoeff(&imax);

    Eigen::Vector4d q;
    switch (imax) {
        case 0:
            q(0) = std::sqrt(sq(0));
            q(1) = (dcm(1, 2) - dcm(2, 1)) / (4.0 * q(0));
            q(2) = (dcm(2, 0) - dcm(0, 2)) / (4.0 * q(0));
            q(3) = (dcm(0, 1) - dcm(1, 0)) / (4.0 * q(0));
            break;
        case 1:
            q(1) = std::sqrt(sq(1));
            q(0) = (dcm(1, 2) - dcm(2, 1)) / (4.0 * q(1));
            q(2) = (dcm(0, 1) + dcm(1, 0)) / (4.0 * q(1));
            q(3) = (dcm(2, 0) + dcm(0, 2)) / (4.0 * q(1));
            break;
        case 2:
            q(2) = std::sqrt(sq(2));
            q(0) = (dcm(2, 0) - dcm(0, 2)) / (4.0 * q(2));
            q(1) = (dcm(0, 1) + dcm(1, 0)) / (4.0 * q(2));
            q(3) = (dcm(1, 2) + dcm(2, 1)) / (4.0 * q(2));
            break;
        default:
            q(3) = std::sqrt(sq(3));
            q(0) = (dcm(0, 1) - dcm(1, 0)) / (4.0 * q(3));
            q(1) = (dcm(2, 0) + dcm(0, 2)) / (4.0 * q(3));
            q(2) = (dcm(1, 2) + dcm(2, 1)) / (4.0 * q(3));
            break;
    }
    if (q(0) < 0.0) {
        q = -q;
    }
    return q.normalized();
}

Eigen::Vector3d dcm_to_mrp(const Eigen::Matrix3d& dcm) {
    const double ortho_err = (dcm * dcm.transpose() - Eigen::Matrix3d::Identity())
                                 .cwiseAbs()
                                 .maxCoeff();
    if (ortho_err > 1.0e-9 || std::abs(dcm.determinant() - 1.0) > 1.0e-9) {
        throw SimError("dcm_to_mrp: input is not a proper orthonormal rotation matrix");
    }
    const Eigen::Vector4d q = dcm_to_quaternion(dcm);
    return q.tail<3>() / (1.0 + q(0));
}

Eigen::Vector3d mrp_compose(const Eigen::Vector3d& first, const Eigen::Vector3d& second) {
    Eigen::Vector3d s1 = first;
    Eigen::Vector3d s2 = second;
    double denom = 1.0 + s1.squaredNorm() * s2.squaredNorm() - 2.0 * s1.dot(s2);
    if (std::abs(denom) < 1.0e-6) {
        // The composed rotation is near 360 deg in this description; switch
        // an operand to its shadow set to move the denominator away from 0.
        if (s1.squaredNorm() > 0.0) {
            s1 = mrp_shadow(s1);
        } else {
            s2 = mrp_shadow(s2);
        }
        denom = 1.0 + s1.squaredNorm() * s2.squaredNorm() - 2.0 * s1.dot(s2);
    }
    const Eigen::Vector3d numer = (1.0 - s1.squaredNorm()) * s2 +
                                  (1.0 - s2.squaredNorm()) * s1 - 2.0 * s2.cross(s1);
    return mrp_switch_to_inner(numer / denom);
}

Eigen::Vector3d mrp_relative(const Eigen::Vector3d& sigma_BN, const Eigen::Vector3d& sigma_RN) {
    // C_BR = C_BN * C_RN^T: rotate N->R inverse first, then N->B.
    return mrp_compose(-sigma_RN, sigma_BN);
}

// ---------------------------------------------------------------------------
// Rigid-body dynamics
// ---------------------------------------------------------------------------

InertiaCheck check_inertia(const Eigen::Matrix3d& inertia) {
    const double scale = std::max(inertia.cwiseAbs().maxCoeff(), 1.0);
    if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1.0e-9 * scale) {
        throw ConfigError("check_inertia: inertia matrix is not symmetric");
    }

    Eigen::Vector3d principal;
    const bool diagonal =
        (inertia - Eigen::Matrix3d(inertia.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <=
        1.0e-12 * scale;
    if (diagonal) {
        principal = inertia.diagonal();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(inertia);
        principal = solver.eigenvalues();
    }

    InertiaCheck result;
    for (int k = 0; k < 3; ++k) {
        if (principal(k) <= 0.0) {
            result.report = "principal moment I" + std::to_string(k + 1) +
                            " = " + std::to_string(principal(k)) + " is not positive";
            return result;
        }
    }
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        if (principal(i) + principal(j) < principal(k)) {
            result.report = "inertia triangle rule violated on axis " + std::to_string(k + 1) +
                            ": I" + std::to_string(i + 1) + " + I" + std::to_string(j + 1) +
                            " = " + std::to_string(principal(i) + principal(j)) + " < I" +
                            std::to_string(k + 1) + " = " + std::to_string(principal(k));
            return result;
        }
    }
    result.valid = true;
    result.report = "valid";
    return result;
}

Eigen::Vector3d rigid_body_omega_dot(const Eigen::Matrix3d& inertia,
                                     const Eigen::Vector3d& omega,
                                     const Eigen::Vector3d& torque_B) {
    return inertia.ldlt().solve(-omega.cross(inertia * omega) + torque_B);
}

// ---------------------------------------------------------------------------
// Coupled state propagation
// ---------------------------------------------------------------------------

StateVector pack_state(const SpacecraftState& state) {
    StateVector x;
    x.segment<3>(0) = state.r_CN_N;
    x.segment<3>(3) = state.v_CN_N;
    x.segment<3>(6) = state.sigma_BN;
    x.segment<3>(9) = state.omega_BN_B;
    return x;
}

SpacecraftState unpack_state(const StateVector& x) {
    SpacecraftState s;
    s.r_CN_N = x.segment<3>(0);
    s.v_CN_N = x.segment<3>(3);
    s.sigma_BN = x.segment<3>(6);
    s.omega_BN_B = x.segment<3>(9);
    return s;
}

SpacecraftState propagate_state(const SpacecraftState& state, double t, double dt,
                                const Eigen::Matrix3d& inertia,
                                std::span<const GravityBodyState> gravity_bodies,
                                const Eigen::Vector3d& torque_B) {
    if (dt <= 0.0) {
        throw SimError("propagate_state: step size must be positive");
    }
    const auto deriv = [&](double /*tau*/, const StateVector& x) -> StateVector {
        StateVector dx;
        dx.segment<3>(0) = x.segment<3>(3);
        dx.segment<3>(3) = gravity_bodies.empty()
                               ? Eigen::Vector3d::Zero().eval()
                               : gravity_accel(gravity_bodies, x.segment<3>(0));
        dx.segment<3>(6) = mrp_rate(x.segment<3>(6), x.segment<3>(9));
        dx.segment<3>(9) = rigid_body_omega_dot(inertia, x.segment<3>(9), torque_B);
        return dx;
    };

    StateVector next = rk4_step(deriv, pack_state(state), t, dt);
    if (!next.allFinite()) {
        throw SimError("propagate_state: non-finite state at t = " + std::to_string(t + dt) +
                       " s");
    }
    SpacecraftState out = unpack_state(next);
    out.sigma_BN = mrp_switch_to_inner(out.sigma_BN);
    return out;
}

}  // namespace orbitforge
