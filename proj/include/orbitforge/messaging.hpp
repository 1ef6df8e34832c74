#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitforge/errors.hpp"
#include "orbitforge/module.hpp"
#include "orbitforge/sim_time.hpp"

namespace orbitforge {

/// Single-writer typed message slot.
///
/// A slot holds the latest payload plus write metadata. Gateway behavior:
/// a slot may be retargeted to forward reads to another slot, giving
/// downstream subscribers one fixed input point whose upstream source can be
/// switched at runtime (mode transitions re-point gateways, never readers).
template <typename Payload>
class MessageSlot {
public:
    void write(const Payload& value, SimNanos time) {
        payload_ = value;
        write_time_ = time;
        ++write_count_;
    }

    const Payload& payload() const { return effective().payload_; }
    bool is_written() const { return effective().write_count_ > 0; }
    std::uint64_t write_count() const { return effective().write_count_; }
    SimNanos write_time() const { return effective().write_time_; }

    /// Forward reads to `source`; nullptr restores self-storage (zeroed).
    void retarget(const MessageSlot* source) {
        forward_ = (source == this) ? nullptr : source;
        if (forward_ == nullptr) {
            zero();
        }
    }

    /// Drop forwarding and reset to the never-written state (zero payload).
    void zero() {
        forward_ = nullptr;
        payload_ = Payload{};
        write_time_ = 0;
        write_count_ = 0;
    }

    bool is_gateway_linked() const { return forward_ != nullptr; }

private:
    const MessageSlot& effective() const { return forward_ != nullptr ? *forward_ : *this; }

    Payload payload_{};
    SimNanos write_time_{0};
    std::uint64_t write_count_{0};
    const MessageSlot* forward_{nullptr};
};

/// Reader endpoint. Unlinked or never-written ports read the payload kind's
/// zero value and report is_written() == false.
template <typename Payload>
class InputPort {
public:
    void subscribe_to(const MessageSlot<Payload>& source) { slot_ = &source; }
    void unsubscribe() { slot_ = nullptr; }

    bool is_linked() const { return slot_ != nullptr; }
    bool is_written() const { return slot_ != nullptr && slot_->is_written(); }

    Payload read() const {
        if (slot_ == nullptr || !slot_->is_written()) {
            return Payload{};
        }
        return slot_->payload();
    }

    std::uint64_t write_count() const { return slot_ != nullptr ? slot_->write_count() : 0; }
    SimNanos write_time() const { return slot_ != nullptr ? slot_->write_time() : 0; }

private:
    const MessageSlot<Payload>* slot_{nullptr};
};

/// Sampling period for N log points over a run, floored to a whole number of
/// simulation steps and clamped to the 1 ns minimum:
///
///   dt_samp = max( floor(T_final / (dt_sim (N-1))) * dt_sim, 1 ns )
inline SimNanos sampling_time(SimNanos t_final, SimNanos dt_sim, std::int64_t num_points) {
    if (num_points < 2) {
        throw ConfigError("sampling_time: num_points must be >= 2, got " +
                          std::to_string(num_points));
    }
    if (dt_sim < 1) {
        throw ConfigError("sampling_time: dt_sim must be >= 1 ns");
    }
    const SimNanos period = (t_final / (dt_sim * (num_points - 1))) * dt_sim;
    return period > 0 ? period : 1;
}

/// Type-erased recorder interface; the kernel runs recorders after all
/// modules of a task have updated so same-step writes are observed.
class RecorderBase : public SimModule {
public:
    const std::vector<SimNanos>& times() const { return times_; }
    std::vector<double> times_sec() const {
        std::vector<double> out;
        out.reserve(times_.size());
        for (SimNanos t : times_) {
            out.push_back(nanos_to_sec(t));
        }
        return out;
    }
    std::size_t sample_count() const { return times_.size(); }

    void reset(SimNanos /*current_time*/) override { clear(); }

    virtual void clear() { times_.clear(); }

protected:
    /// True when a sample is due at `time` (first firing always records).
    bool sample_due(SimNanos time) const {
        return times_.empty() || time >= times_.back() + sampling_;
    }

    std::vector<SimNanos> times_;
    SimNanos sampling_{0};  ///< 0 = record every update
};

/// Records a message slot's payload at task firing times, decimated to the
/// configured sampling period.
template <typename Payload>
class Recorder : public RecorderBase {
public:
    explicit Recorder(SimNanos sampling_period = 0) {
        sampling_ = sampling_period;
        model_tag = "recorder";
    }

    InputPort<Payload>& input() { return input_; }

    void update(SimNanos current_time) override {
        if (sample_due(current_time)) {
            times_.push_back(current_time);
            records_.push_back(input_.read());
        }
    }

    void clear() override {
        RecorderBase::clear();
        records_.clear();
    }

    const std::vector<Payload>& records() const { return records_; }

private:
    InputPort<Payload> input_;
    std::vector<Payload> records_;
};

}  // namespace orbitforge
