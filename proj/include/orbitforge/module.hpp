#pragma once

#include <string>

#include "orbitforge/sim_time.hpp"

namespace orbitforge {

/// Behavioral interface every simulation module implements.
///
/// reset() is invoked exactly once per initialize_simulation() call and must
/// return the module to its configured defaults. update() runs at every
/// firing of the task the module is assigned to, and only then.
class SimModule {
public:
    virtual ~SimModule() = default;

    /// Synchronize internal state to defaults. Modules with required input
    /// links verify them here and throw if a link is missing.
    virtual void reset(SimNanos current_time) { (void)current_time; }

    /// Primary computation, called at integer multiples of the task rate.
    virtual void update(SimNanos current_time) = 0;

    /// Identifies the module in execution-order listings and error messages.
    std::string model_tag = "module";
};

}  // namespace orbitforge
