#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

/// Configuration / validation failure. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime simulation failure. The CLI maps these to exit code 3.
struct SimError : std::runtime_error {
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbitforge
