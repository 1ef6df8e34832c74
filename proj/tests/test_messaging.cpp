#include <doctest.h>

#include <random>

#include "orbitforge/errors.hpp"
#include "orbitforge/kernel.hpp"
#include "orbitforge/messaging.hpp"

using namespace orbitforge;

namespace {

struct Counter {
    int value{0};
};

/// Writes successive integers to its output each update.
class CountingWriter : public SimModule {
public:
    CountingWriter() { model_tag = "countingWriter"; }
    MessageSlot<Counter> out_msg;
    void reset(SimNanos) override { next_ = 1; }
    void update(SimNanos t) override { out_msg.write(Counter{next_++}, t); }

private:
    int next_{1};
};

}  // namespace

TEST_CASE("message slots: single-writer visibility and zero defaults") {
    MessageSlot<Counter> slot;
    InputPort<Counter> port;

    SUBCASE("read before link or write yields the zero value") {
        CHECK(port.read().value == 0);
        CHECK_FALSE(port.is_linked());
        CHECK_FALSE(port.is_written());

        port.subscribe_to(slot);
        CHECK(port.is_linked());
        CHECK_FALSE(port.is_written());
        CHECK(port.read().value == 0);
    }

    SUBCASE("link then write, reader observes the latest payload") {
        port.subscribe_to(slot);
        slot.write(Counter{7}, 100);
        CHECK(port.read().value == 7);
        CHECK(port.is_written());
        CHECK(port.write_count() == 1);
        CHECK(port.write_time() == 100);

        slot.write(Counter{9}, 200);
        CHECK(port.read().value == 9);
        CHECK(port.write_count() == 2);
    }

    SUBCASE("re-subscribing tracks the new writer only") {
        MessageSlot<Counter> second;
        port.subscribe_to(slot);
        slot.write(Counter{1}, 0);
        second.write(Counter{42}, 0);
        port.subscribe_to(second);
        CHECK(port.read().value == 42);
        slot.write(Counter{5}, 1);
        CHECK(port.read().value == 42);
    }
}

TEST_CASE("gateway slots forward the chosen source") {
    MessageSlot<Counter> gateway;
    MessageSlot<Counter> hill_source, inertial_source;
    InputPort<Counter> downstream;
    downstream.subscribe_to(gateway);

    hill_source.write(Counter{11}, 0);
    inertial_source.write(Counter{22}, 0);

    gateway.retarget(&hill_source);
    CHECK(downstream.read().value == 11);
    CHECK(downstream.is_written());

    SUBCASE("switching sources redirects downstream reads") {
        gateway.retarget(&inertial_source);
        CHECK(downstream.read().value == 22);
    }

    SUBCASE("retarget to none reads zeros") {
        gateway.retarget(nullptr);
        CHECK(downstream.read().value == 0);
        CHECK_FALSE(downstream.is_written());
    }

    SUBCASE("zero() is idempotent") {
        gateway.zero();
        gateway.zero();
        CHECK(downstream.read().value == 0);
        CHECK_FALSE(gateway.is_gateway_linked());
    }
}

TEST_CASE("sampling_time implements the floor law with the 1 ns clamp") {
    CHECK(sampling_time(sec_to_nanos(1000.0), sec_to_nanos(1.0), 101) == sec_to_nanos(10.0));
    CHECK(sampling_time(sec_to_nanos(1000.0), sec_to_nanos(1.0), 2) == sec_to_nanos(1000.0));
    CHECK(sampling_time(5, 1, 1001) == 1);  // floor gives 0 -> clamped to 1 ns

    CHECK_THROWS_AS(sampling_time(100, 1, 1), ConfigError);
    CHECK_THROWS_AS(sampling_time(100, 0, 10), ConfigError);

    SUBCASE("property: positive and a multiple of dt_sim (or the clamp)") {
        std::mt19937_64 rng(5150);
        for (int trial = 0; trial < 200; ++trial) {
            const SimNanos dt = 1 + static_cast<SimNanos>(rng() % 2'000'000'000ULL);
            const SimNanos t_final = static_cast<SimNanos>(rng() % 4'000'000'000'000ULL);
            const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 2000);
            const SimNanos period = sampling_time(t_final, dt, n);
            REQUIRE(period >= 1);
            REQUIRE((period % dt == 0 || period == 1));
        }
    }
}

TEST_CASE("recorders sample at task firings per the sampling period") {
    SimContainer sim;
    const ProcessHandle process = sim.create_process("proc");
    CountingWriter writer;

    SUBCASE("sampling 0 records every update: 1 s task over 10 s -> 11 samples") {
        sim.create_task(process, "task", sec_to_nanos(1.0));
        sim.add_model_to_task("task", writer);
        Recorder<Counter> recorder;
        recorder.input().subscribe_to(writer.out_msg);
        sim.add_recorder_to_task("task", recorder);
        CHECK(recorder.times().empty());

        sim.initialize_simulation();
        sim.configure_stop_time(sec_to_nanos(10.0));
        sim.execute_simulation();
        CHECK(recorder.sample_count() == 11);
        CHECK(recorder.records().front().value == 1);
        CHECK(recorder.records().back().value == 11);
    }

    SUBCASE("sampling 20 s on a 5 s task over 60 s -> samples at 0,20,40,60") {
        sim.create_task(process, "task", sec_to_nanos(5.0));
        sim.add_model_to_task("task", writer);
        Recorder<Counter> recorder(sec_to_nanos(20.0));
        recorder.input().subscribe_to(writer.out_msg);
        sim.add_recorder_to_task("task", recorder);

        sim.initialize_simulation();
        sim.configure_stop_time(sec_to_nanos(60.0));
        sim.execute_simulation();
        CHECK(recorder.times() ==
              std::vector<SimNanos>{0, sec_to_nanos(20.0), sec_to_nanos(40.0),
                                    sec_to_nanos(60.0)});
    }

    SUBCASE("sampling from the floor law: 101 samples over 1000 s at 1 s") {
        sim.create_task(process, "task", sec_to_nanos(1.0));
        sim.add_model_to_task("task", writer);
        Recorder<Counter> recorder(sampling_time(sec_to_nanos(1000.0), sec_to_nanos(1.0), 101));
        recorder.input().subscribe_to(writer.out_msg);
        sim.add_recorder_to_task("task", recorder);

        sim.initialize_simulation();
        sim.configure_stop_time(sec_to_nanos(1000.0));
        sim.execute_simulation();
        CHECK(recorder.sample_count() == 101);
    }

    SUBCASE("recorders observe same-step writes (run after modules)") {
        sim.create_task(process, "task", sec_to_nanos(1.0));
        Recorder<Counter> recorder;
        recorder.input().subscribe_to(writer.out_msg);
        sim.add_recorder_to_task("task", recorder);  // attached before the writer
        sim.add_model_to_task("task", writer);

        sim.initialize_simulation();
        sim.single_step_processes();
        REQUIRE(recorder.sample_count() == 1);
        CHECK(recorder.records()[0].value == 1);  // not the stale pre-update value
    }
}

TEST_CASE("recorder count law and spacing properties") {
    std::mt19937_64 rng(91411);
    for (int trial = 0; trial < 60; ++trial) {
        const SimNanos rate = 1 + static_cast<SimNanos>(rng() % 400);
        const SimNanos sampling = rate * (1 + static_cast<SimNanos>(rng() % 9));
        const SimNanos stop = static_cast<SimNanos>(rng() % 20000);

        SimContainer sim;
        const ProcessHandle process = sim.create_process("p");
        sim.create_task(process, "t", rate);
        CountingWriter writer;
        sim.add_model_to_task("t", writer);
        Recorder<Counter> recorder(sampling);
        recorder.input().subscribe_to(writer.out_msg);
        sim.add_recorder_to_task("t", recorder);

        sim.initialize_simulation();
        sim.configure_stop_time(stop);
        sim.execute_simulation();

        // count law: sampling divides into the firing grid
        REQUIRE(recorder.sample_count() == static_cast<std::size_t>(stop / sampling) + 1);

        // spacing >= sampling, times strictly increasing
        const auto& times = recorder.times();
        for (std::size_t k = 1; k < times.size(); ++k) {
            REQUIRE(times[k] - times[k - 1] >= sampling);
            REQUIRE(times[k] > times[k - 1]);
        }
    }
}
