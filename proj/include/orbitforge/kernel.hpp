#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitforge/errors.hpp"
#include "orbitforge/messaging.hpp"
#include "orbitforge/module.hpp"
#include "orbitforge/sim_time.hpp"

namespace orbitforge {

struct ProcessHandle {
    std::size_t index{0};
};

struct TaskHandle {
    std::size_t process_index{0};
    std::size_t task_index{0};
};

/// Deterministic fixed-rate execution engine.
///
/// Hierarchy: container -> processes -> tasks -> modules. Processes order by
/// descending explicit priority (unprioritized ones follow in creation
/// order); the same rule orders modules within a task. Tasks fire at integer
/// multiples of their rate starting at t = 0, and the registry is frozen
/// once initialize_simulation() has run.
class SimContainer {
public:
    ProcessHandle create_process(const std::string& name,
                                 std::optional<int> priority = std::nullopt);
    TaskHandle create_task(ProcessHandle process, const std::string& name, SimNanos rate);
    void add_model_to_task(const std::string& task_name, SimModule& module,
                           std::optional<int> priority = std::nullopt);
    /// Recorders run after every module of the task (lowest implicit
    /// priority) so they observe all same-step writes.
    void add_recorder_to_task(const std::string& task_name, RecorderBase& recorder);

    /// Enable/disable a task at runtime. A re-enabled task resumes firing at
    /// the next rate multiple >= the current clock.
    void set_task_enabled(const std::string& task_name, bool enabled);
    bool task_enabled(const std::string& task_name) const;

    /// Invokes every registered module's reset hook exactly once with t = 0,
    /// rewinds the clock, and freezes the registry.
    void initialize_simulation();

    /// Advance the clock to the earliest pending firing time and run all
    /// tasks due at it, in process / task / module-priority order. A
    /// container with no enabled tasks is left unchanged.
    void single_step_processes();

    void configure_stop_time(SimNanos stop);

    /// Repeated single steps through stop_time inclusive; the clock lands
    /// exactly on stop_time.
    void execute_simulation();

    /// Human-readable execution tree: one node per line, two spaces of
    /// indentation per level, task rates in seconds with three decimals,
    /// explicit priorities in square brackets.
    std::string show_execution_order() const;

    SimNanos clock() const { return clock_; }
    SimNanos stop_time() const { return stop_time_; }
    bool initialized() const { return initialized_; }

    /// Lint support: true when the module is assigned to at least one task.
    bool module_is_tasked(const SimModule& module) const;

private:
    struct ModelEntry {
        SimModule* module{nullptr};
        std::optional<int> priority;
        std::size_t insertion{0};
    };

    struct Task {
        std::string name;
        SimNanos rate{0};
        bool enabled{true};
        SimNanos next_fire{0};
        std::vector<ModelEntry> models;  // kept in execution order
        std::vector<RecorderBase*> recorders;
    };

    struct Process {
        std::string name;
        std::optional<int> priority;
        std::size_t insertion{0};
        std::vector<Task> tasks;
    };

    Task* find_task(const std::string& name);
    const Task* find_task(const std::string& name) const;
    std::vector<const Process*> processes_in_execution_order() const;
    std::vector<Process*> processes_in_execution_order();
    void require_mutable(const char* operation) const;
    void fire_task(Task& task);

    std::vector<Process> processes_;
    SimNanos clock_{0};
    SimNanos stop_time_{0};
    bool stop_configured_{false};
    bool initialized_{false};
};

/// Minimal lifecycle-demonstration module: reset() zeroes `dummy`, each
/// update increments it by one and publishes the value.
class TemplateModule : public SimModule {
public:
    TemplateModule() { model_tag = "cModuleTemplate"; }

    double dummy = 0.0;
    MessageSlot<double> data_out_msg;

    void reset(SimNanos /*current_time*/) override { dummy = 0.0; }

    void update(SimNanos current_time) override {
        dummy += 1.0;
        data_out_msg.write(dummy, current_time);
    }
};

}  // namespace orbitforge
