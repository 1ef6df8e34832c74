#include "orbitforge/kernel.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_set>

namespace orbitforge {

namespace {

/// Shared ordering rule: explicit priorities first (descending), then
/// unprioritized entries in insertion order. Stable against insertion index.
template <typename Entry>
void sort_by_priority(std::vector<Entry>& entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.priority.has_value() != b.priority.has_value()) {
            return a.priority.has_value();
        }
        if (a.priority.has_value()) {
            if (*a.priority != *b.priority) {
                return *a.priority > *b.priority;
            }
        }
        return a.insertion < b.insertion;
    });
}

}  // namespace

ProcessHandle SimContainer::create_process(const std::string& name, std::optional<int> priority) {
    require_mutable("create_process");
    for (const Process& p : processes_) {
        if (p.name == name) {
            throw ConfigError("duplicate process name '" + name + "'");
        }
    }
    Process process;
    process.name = name;
    process.priority = priority;
    process.insertion = processes_.size();
    processes_.push_back(std::move(process));
    return ProcessHandle{processes_.size() - 1};
}

TaskHandle SimContainer::create_task(ProcessHandle process, const std::string& name,
                                     SimNanos rate) {
    require_mutable("create_task");
    if (process.index >= processes_.size()) {
        throw ConfigError("create_task: invalid process handle");
    }
    if (rate <= 0) {
        throw ConfigError("task '" + name + "': rate must be positive, got " +
                          std::to_string(rate) + " ns");
    }
    if (find_task(name) != nullptr) {
        throw ConfigError("duplicate task name '" + name + "'");
    }
    Task task;
    task.name = name;
    task.rate = rate;
    processes_[process.index].tasks.push_back(std::move(task));
    return TaskHandle{process.index, processes_[process.index].tasks.size() - 1};
}

void SimContainer::add_model_to_task(const std::string& task_name, SimModule& module,
                                     std::optional<int> priority) {
    require_mutable("add_model_to_task");
    Task* task = find_task(task_name);
    if (task == nullptr) {
        throw ConfigError("add_model_to_task: unknown task '" + task_name + "'");
    }
    ModelEntry entry;
    entry.module = &module;
    entry.priority = priority;
    entry.insertion = task->models.size();
    task->models.push_back(entry);
    sort_by_priority(task->models);
}

void SimContainer::add_recorder_to_task(const std::string& task_name, RecorderBase& recorder) {
    require_mutable("add_recorder_to_task");
    Task* task = find_task(task_name);
    if (task == nullptr) {
        throw ConfigError("add_recorder_to_task: unknown task '" + task_name + "'");
    }
    task->recorders.push_back(&recorder);
}

void SimContainer::set_task_enabled(const std::string& task_name, bool enabled) {
    Task* task = find_task(task_name);
    if (task == nullptr) {
        throw ConfigError("set_task_enabled: unknown task '" + task_name + "'");
    }
    if (enabled && !task->enabled) {
        // Resume on the task's own grid, never in the past.
        const SimNanos next_multiple = ((clock_ + task->rate - 1) / task->rate) * task->rate;
        task->next_fire = std::max(task->next_fire, next_multiple);
    }
    task->enabled = enabled;
}

bool SimContainer::task_enabled(const std::string& task_name) const {
    const Task* task = find_task(task_name);
    if (task == nullptr) {
        throw ConfigError("task_enabled: unknown task '" + task_name + "'");
    }
    return task->enabled;
}

void SimContainer::initialize_simulation() {
    if (processes_.empty()) {
        throw ConfigError("initialize_simulation: container has no processes");
    }
    clock_ = 0;
    std::unordered_set<const SimModule*> seen;
    for (Process* process : processes_in_execution_order()) {
        for (Task& task : process->tasks) {
            task.next_fire = 0;
            for (ModelEntry& entry : task.models) {
                if (!seen.insert(entry.module).second) {
                    continue;  // one reset per module per initialization
                }
                try {
                    entry.module->reset(0);
                } catch (const std::exception& e) {
                    throw SimError("module '" + entry.module->model_tag +
                                   "' failed to reset: " + e.what());
                }
            }
            for (RecorderBase* rec : task.recorders) {
                if (!seen.insert(rec).second) {
                    continue;
                }
                rec->reset(0);
            }
        }
    }
    initialized_ = true;
}

void SimContainer::fire_task(Task& task) {
    for (ModelEntry& entry : task.models) {
        try {
            entry.module->update(clock_);
        } catch (const std::exception& e) {
            throw SimError("module '" + entry.module->model_tag + "' failed at t=" +
                           std::to_string(clock_) + " ns: " + e.what());
        }
    }
    for (RecorderBase* rec : task.recorders) {
        rec->update(clock_);
    }
    task.next_fire += task.rate;
}

void SimContainer::single_step_processes() {
    if (!initialized_) {
        throw SimError("single_step_processes called before initialize_simulation");
    }
    SimNanos next = std::numeric_limits<SimNanos>::max();
    for (const Process& process : processes_) {
        for (const Task& task : process.tasks) {
            if (task.enabled) {
                next = std::min(next, task.next_fire);
            }
        }
    }
    if (next == std::numeric_limits<SimNanos>::max()) {
        return;  // nothing enabled; clock unchanged
    }
    clock_ = next;
    for (Process* process : processes_in_execution_order()) {
        for (Task& task : process->tasks) {
            if (task.enabled && task.next_fire == clock_) {
                fire_task(task);
            }
        }
    }
}

void SimContainer::configure_stop_time(SimNanos stop) {
    if (stop < clock_) {
        throw ConfigError("configure_stop_time: stop " + std::to_string(stop) +
                          " ns is before current clock " + std::to_string(clock_) + " ns");
    }
    stop_time_ = stop;
    stop_configured_ = true;
}

void SimContainer::execute_simulation() {
    if (!initialized_) {
        throw SimError("execute_simulation called before initialize_simulation");
    }
    if (!stop_configured_) {
        throw SimError("execute_simulation called without a configured stop time");
    }
    while (true) {
        SimNanos next = std::numeric_limits<SimNanos>::max();
        for (const Process& process : processes_) {
            for (const Task& task : process.tasks) {
                if (task.enabled) {
                    next = std::min(next, task.next_fire);
                }
            }
        }
        if (next == std::numeric_limits<SimNanos>::max() || next > stop_time_) {
            break;
        }
        single_step_processes();
    }
    clock_ = stop_time_;
}

std::string SimContainer::show_execution_order() const {
    std::string out = "simulation container\n";
    char buf[64];
    for (const Process* process : processes_in_execution_order()) {
        out += "  " + process->name;
        if (process->priority.has_value()) {
            std::snprintf(buf, sizeof(buf), " [%d]", *process->priority);
            out += buf;
        }
        out += '\n';
        for (const Task& task : process->tasks) {
            std::snprintf(buf, sizeof(buf), " (%.3f s)", nanos_to_sec(task.rate));
            out += "    " + task.name + buf + "\n";
            for (const ModelEntry& entry : task.models) {
                out += "      " + entry.module->model_tag;
                if (entry.priority.has_value()) {
                    std::snprintf(buf, sizeof(buf), " [%d]", *entry.priority);
                    out += buf;
                }
                out += '\n';
            }
            for (const RecorderBase* rec : task.recorders) {
                out += "      " + rec->model_tag + '\n';
            }
        }
    }
    return out;
}

bool SimContainer::module_is_tasked(const SimModule& module) const {
    for (const Process& process : processes_) {
        for (const Task& task : process.tasks) {
            for (const ModelEntry& entry : task.models) {
                if (entry.module == &module) {
                    return true;
                }
            }
            for (const RecorderBase* rec : task.recorders) {
                if (rec == &module) {
                    return true;
                }
            }
        }
    }
    return false;
}

SimContainer::Task* SimContainer::find_task(const std::string& name) {
    for (Process& process : processes_) {
        for (Task& task : process.tasks) {
            if (task.name == name) {
                return &task;
            }
        }
    }
    return nullptr;
}

const SimContainer::Task* SimContainer::find_task(const std::string& name) const {
    return const_cast<SimContainer*>(this)->find_task(name);
}

std::vector<const SimContainer::Process*> SimContainer::processes_in_execution_order() const {
    auto ordered = const_cast<SimContainer*>(this)->processes_in_execution_order();
    return {ordered.begin(), ordered.end()};
}

std::vector<SimContainer::Process*> SimContainer::processes_in_execution_order() {
    struct Ref {
        std::optional<int> priority;
        std::size_t insertion;
        Process* process;
    };
    std::vector<Ref> refs;
    refs.reserve(processes_.size());
    for (Process& p : processes_) {
        refs.push_back(Ref{p.priority, p.insertion, &p});
    }
    sort_by_priority(refs);
    std::vector<Process*> out;
    out.reserve(refs.size());
    for (const Ref& ref : refs) {
        out.push_back(ref.process);
    }
    return out;
}

void SimContainer::require_mutable(const char* operation) const {
    if (initialized_) {
        throw ConfigError(std::string(operation) +
                          ": the process/task/module registry is frozen after initialization");
    }
}

}  // namespace orbitforge
