#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "orbitforge/dynamics_modules.hpp"
#include "orbitforge/ephemeris.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/kernel.hpp"
#include "orbitforge/orbit_elements.hpp"
#include "orbitforge/propagation.hpp"
#include "orbitforge/rigid_body.hpp"
#include "orbitforge/rk4.hpp"

using namespace orbitforge;

namespace {

Eigen::Matrix3d diag(double a, double b, double c) {
    return Eigen::Vector3d{a, b, c}.asDiagonal();
}

std::vector<GravityBodyState> earth_only(bool use_j2) {
    GravityBodyState earth;
    earth.body = create_body("earth");
    earth.body.use_j2 = use_j2;
    return {earth};
}

}  // namespace

TEST_CASE("check_inertia") {
    CHECK(check_inertia(diag(900.0, 800.0, 700.0)).valid);
    CHECK(check_inertia(diag(900.0, 800.0, 600.0)).valid);

    SUBCASE("triangle-rule violation names the axis") {
        const InertiaCheck check = check_inertia(diag(1000.0, 100.0, 100.0));
        CHECK_FALSE(check.valid);
        CHECK(check.report.find("triangle") != std::string::npos);
        CHECK(check.report.find("I1") != std::string::npos);
    }

    SUBCASE("non-positive principal moment") {
        CHECK_FALSE(check_inertia(diag(900.0, -1.0, 600.0)).valid);
    }

    SUBCASE("asymmetric input rejected outright") {
        Eigen::Matrix3d bad = diag(900.0, 800.0, 700.0);
        bad(0, 1) = 5.0;
        CHECK_THROWS_AS(check_inertia(bad), ConfigError);
    }

    SUBCASE("non-diagonal input is diagonalized first") {
        // Rotate a valid diagonal inertia: still valid.
        const Eigen::Matrix3d rot =
            Eigen::AngleAxisd(0.7, Eigen::Vector3d{1.0, 2.0, 2.0}.normalized())
                .toRotationMatrix();
        const Eigen::Matrix3d good = rot * diag(900.0, 800.0, 700.0) * rot.transpose();
        CHECK(check_inertia(good).valid);

        const Eigen::Matrix3d bad = rot * diag(1000.0, 100.0, 100.0) * rot.transpose();
        CHECK_FALSE(check_inertia(bad).valid);
    }
}

TEST_CASE("rigid_body_omega_dot") {
    const Eigen::Matrix3d inertia = diag(900.0, 800.0, 600.0);

    SUBCASE("torque-free principal-axis spin is stationary") {
        CHECK(rigid_body_omega_dot(inertia, {0.0, 0.1, 0.0}, Eigen::Vector3d::Zero())
                  .norm() <= 1e-18);
    }

    SUBCASE("torque about one axis from rest: omega_dot = L / I") {
        const Eigen::Vector3d omega_dot =
            rigid_body_omega_dot(inertia, Eigen::Vector3d::Zero(), {0.0, 0.0, 1.2});
        CHECK(omega_dot.x() == doctest::Approx(0.0));
        CHECK(omega_dot.y() == doctest::Approx(0.0));
        CHECK(omega_dot.z() == doctest::Approx(1.2 / 600.0).epsilon(1e-14));
    }

    SUBCASE("torque-free motion conserves kinetic energy and |I omega|") {
        Eigen::Vector3d omega{0.011, 0.1, 0.02};  // off-axis tumble
        const double energy0 = 0.5 * omega.dot(inertia * omega);
        const double h0 = (inertia * omega).norm();
        const auto deriv = [&](double, const Eigen::Vector3d& w) {
            return rigid_body_omega_dot(inertia, w, Eigen::Vector3d::Zero());
        };
        for (int k = 0; k < 6000; ++k) {
            omega = rk4_step(deriv, omega, k * 0.01, 0.01);
        }
        const double energy = 0.5 * omega.dot(inertia * omega);
        CHECK(std::abs(energy - energy0) <= 1e-10 * energy0);
        CHECK(std::abs((inertia * omega).norm() - h0) <= 1e-10 * h0);
    }
}

TEST_CASE("rk4_step single-step values") {
    SUBCASE("exponential: one step of x' = x from 1 at dt = 0.1") {
        const double next =
            rk4_step([](double, double x) { return x; }, 1.0, 0.0, 0.1);
        // closed-form RK4 polynomial: 1 + h + h^2/2 + h^3/6 + h^4/24
        CHECK(next == doctest::Approx(1.10517083333333333).epsilon(1e-15));
    }

    SUBCASE("zero derivative leaves the state unchanged") {
        const double next =
            rk4_step([](double, double) { return 0.0; }, 3.25, 0.0, 0.5);
        CHECK(next == 3.25);
    }
}

TEST_CASE("two-body propagation conserves energy and momentum direction") {
    ClassicElements oe;
    oe.a = 7.0e6;
    oe.e = 0.0001;
    oe.i = 33.3 * std::numbers::pi / 180.0;
    oe.raan = 48.2 * std::numbers::pi / 180.0;
    oe.argp = 347.8 * std::numbers::pi / 180.0;
    oe.f = 85.3 * std::numbers::pi / 180.0;
    const RVState rv = elem2rv(constants::mu_earth, oe);

    SpacecraftState state;
    state.r_CN_N = rv.r_N;
    state.v_CN_N = rv.v_N;

    const auto bodies = earth_only(false);
    const Eigen::Matrix3d inertia = diag(900.0, 800.0, 600.0);

    const double energy0 =
        0.5 * state.v_CN_N.squaredNorm() - constants::mu_earth / state.r_CN_N.norm();
    const Eigen::Vector3d h0 = state.r_CN_N.cross(state.v_CN_N).normalized();

    const double period = mean_motion_period(constants::mu_earth, oe.a).T;
    const int steps = static_cast<int>(std::ceil(period));
    for (int k = 0; k < steps; ++k) {
        state = propagate_state(state, k * 1.0, 1.0, inertia, bodies,
                                Eigen::Vector3d::Zero());
    }

    const double energy =
        0.5 * state.v_CN_N.squaredNorm() - constants::mu_earth / state.r_CN_N.norm();
    CHECK(std::abs(energy - energy0) <= 1e-8 * std::abs(energy0));

    const Eigen::Vector3d h = state.r_CN_N.cross(state.v_CN_N).normalized();
    const double direction_drift = std::acos(std::clamp(h.dot(h0), -1.0, 1.0));
    CHECK(direction_drift <= 1e-9);
}

TEST_CASE("J2 propagation conserves h_z and the J2-augmented energy") {
    // The first-zonal potential is axisymmetric about z: the z-component of
    // angular momentum and E = v^2/2 + U(r) are exact invariants.
    const auto potential = [](const Eigen::Vector3d& r) {
        const double rn = r.norm();
        const double zr = r.z() / rn;
        return -constants::mu_earth / rn +
               constants::mu_earth * constants::j2_earth * constants::req_earth *
                   constants::req_earth * (3.0 * zr * zr - 1.0) / (2.0 * rn * rn * rn);
    };

    ClassicElements oe;
    oe.a = 7.0e6;
    oe.e = 0.0001;
    oe.i = 33.3 * std::numbers::pi / 180.0;
    oe.raan = 48.2 * std::numbers::pi / 180.0;
    oe.argp = 347.8 * std::numbers::pi / 180.0;
    oe.f = 85.3 * std::numbers::pi / 180.0;
    const RVState rv = elem2rv(constants::mu_earth, oe);

    SpacecraftState state;
    state.r_CN_N = rv.r_N;
    state.v_CN_N = rv.v_N;

    const auto bodies = earth_only(true);
    const Eigen::Matrix3d inertia = diag(900.0, 800.0, 600.0);

    const double hz0 = state.r_CN_N.cross(state.v_CN_N).z();
    const double energy0 = 0.5 * state.v_CN_N.squaredNorm() + potential(state.r_CN_N);

    const double t_final = 3.0 * mean_motion_period(constants::mu_earth, oe.a).T;
    const int steps = static_cast<int>(std::ceil(t_final));
    for (int k = 0; k < steps; ++k) {
        state = propagate_state(state, k * 1.0, 1.0, inertia, bodies,
                                Eigen::Vector3d::Zero());
    }

    const double hz = state.r_CN_N.cross(state.v_CN_N).z();
    const double energy = 0.5 * state.v_CN_N.squaredNorm() + potential(state.r_CN_N);
    CHECK(std::abs(hz - hz0) <= 1e-6 * std::abs(hz0));
    CHECK(std::abs(energy - energy0) <= 1e-6 * std::abs(energy0));
}

TEST_CASE("propagation keeps the MRP inside the unit sphere") {
    SpacecraftState state;
    state.sigma_BN = {0.9, 0.3, 0.2};      // close to the switching surface
    state.omega_BN_B = {0.3, -0.2, 0.25};  // fast tumble
    const Eigen::Matrix3d inertia = diag(900.0, 800.0, 600.0);
    const std::vector<GravityBodyState> no_gravity;

    for (int k = 0; k < 2000; ++k) {
        state = propagate_state(state, k * 0.1, 0.1, inertia, no_gravity,
                                Eigen::Vector3d::Zero());
        REQUIRE(state.sigma_BN.squaredNorm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("propagate_state rejects bad steps and non-finite states") {
    SpacecraftState state;
    state.r_CN_N = {7.0e6, 0.0, 0.0};
    const Eigen::Matrix3d inertia = diag(900.0, 800.0, 600.0);
    const std::vector<GravityBodyState> no_gravity;

    CHECK_THROWS_AS(
        propagate_state(state, 0.0, 0.0, inertia, no_gravity, Eigen::Vector3d::Zero()),
        SimError);

    SpacecraftState poisoned = state;
    poisoned.v_CN_N = {std::nan(""), 0.0, 0.0};
    CHECK_THROWS_WITH_AS(propagate_state(poisoned, 4.0, 1.0, inertia, no_gravity,
                                         Eigen::Vector3d::Zero()),
                         doctest::Contains("t = 5"), SimError);
}

TEST_CASE("spacecraft module integrates at the task rate") {
    SimContainer sim;
    const ProcessHandle process = sim.create_process("proc");
    sim.create_task(process, "task", sec_to_nanos(1.0));

    SpacecraftModule hub;
    hub.mass_props.m_hub = 750.0;
    hub.mass_props.inertia = diag(900.0, 800.0, 700.0);
    hub.state_init.r_CN_N = {7.0e6, 0.0, 0.0};
    hub.state_init.v_CN_N = {0.0, 7546.0532901075418, 0.0};
    hub.add_gravity_body(create_body("earth"));
    sim.add_model_to_task("task", hub);

    Recorder<SCStatesPayload> recorder;
    recorder.input().subscribe_to(hub.sc_state_out_msg);
    sim.add_recorder_to_task("task", recorder);

    sim.initialize_simulation();
    CHECK(hub.state().r_CN_N == hub.state_init.r_CN_N);

    sim.configure_stop_time(sec_to_nanos(10.0));
    sim.execute_simulation();
    REQUIRE(recorder.sample_count() == 11);
    // first sample is the untouched initial state (first firing, dt = 0)
    CHECK(recorder.records()[0].r_BN_N == hub.state_init.r_CN_N);
    // circular orbit: radius preserved, position moved
    CHECK(recorder.records()[10].r_BN_N.norm() == doctest::Approx(7.0e6).epsilon(1e-9));
    CHECK((recorder.records()[10].r_BN_N - hub.state_init.r_CN_N).norm() > 7.0e4);

    SUBCASE("invalid inertia is rejected at initialization with the hub tag") {
        SimContainer bad_sim;
        const ProcessHandle bad_process = bad_sim.create_process("proc");
        bad_sim.create_task(bad_process, "task", sec_to_nanos(1.0));
        SpacecraftModule bad_hub;
        bad_hub.model_tag = "badSat";
        bad_hub.mass_props.inertia = diag(1000.0, 100.0, 100.0);
        bad_sim.add_model_to_task("task", bad_hub);
        CHECK_THROWS_WITH_AS(bad_sim.initialize_simulation(), doctest::Contains("badSat"),
                             SimError);
    }
}

TEST_CASE("external torque module stages commands for the hub") {
    SimContainer sim;
    const ProcessHandle process = sim.create_process("proc");
    sim.create_task(process, "task", sec_to_nanos(1.0));

    ExtForceTorqueModule effector;
    MessageSlot<CmdTorquePayload> command;
    effector.cmd_torque_in.subscribe_to(command);

    SpacecraftModule hub;
    hub.mass_props.m_hub = 750.0;
    hub.mass_props.inertia = diag(900.0, 800.0, 600.0);
    hub.ext_torque_in.subscribe_to(effector.staged_torque_out_msg);

    sim.add_model_to_task("task", effector, 300);
    sim.add_model_to_task("task", hub, 201);
    sim.initialize_simulation();

    command.write(CmdTorquePayload{{0.0, 0.0, 1.2}}, 0);
    sim.configure_stop_time(sec_to_nanos(10.0));
    sim.execute_simulation();

    // constant torque about z for ~10 s: omega_z ramps at L/I
    CHECK(hub.state().omega_BN_B.z() ==
          doctest::Approx(1.2 / 600.0 * 10.0).epsilon(1e-6));

    SUBCASE("unlinked command input reads as zero torque") {
        ExtForceTorqueModule idle;
        idle.update(0);
        CHECK(idle.staged_torque_out_msg.payload().torque_B.norm() == 0.0);
    }
}

TEST_CASE("simple nav passes truth through and requires its link") {
    SimpleNavModule nav;

    SUBCASE("unlinked input fails initialization with a named link") {
        SimContainer sim;
        const ProcessHandle process = sim.create_process("proc");
        sim.create_task(process, "task", sec_to_nanos(1.0));
        sim.add_model_to_task("task", nav);
        CHECK_THROWS_WITH_AS(sim.initialize_simulation(),
                             doctest::Contains("scStateInMsg"), SimError);
    }

    SUBCASE("exact pass-through of the truth state") {
        MessageSlot<SCStatesPayload> truth;
        nav.sc_state_in.subscribe_to(truth);
        SCStatesPayload state;
        state.r_BN_N = {7.0e6, 1.0, 2.0};
        state.sigma_BN = {0.1, 0.2, -0.3};
        state.omega_BN_B = {0.01, 0.0, -0.02};
        truth.write(state, 5);
        nav.update(5);
        CHECK(nav.trans_out_msg.payload().r_BN_N == state.r_BN_N);
        CHECK(nav.trans_out_msg.payload().time == 5);
        CHECK(nav.att_out_msg.payload().sigma_BN == state.sigma_BN);
        CHECK(nav.att_out_msg.payload().omega_BN_B == state.omega_BN_B);
    }
}
