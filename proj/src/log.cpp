#include "orbitforge/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace orbitforge {

LogLevel log_threshold() {
    static const LogLevel threshold = []() {
        const char* env = std::getenv("ORBITFORGE_LOG");
        if (env == nullptr) {
            return LogLevel::warn;
        }
        if (std::strcmp(env, "error") == 0) {
            return LogLevel::error;
        }
        if (std::strcmp(env, "info") == 0) {
            return LogLevel::info;
        }
        if (std::strcmp(env, "debug") == 0) {
            return LogLevel::debug;
        }
        return LogLevel::warn;
    }();
    return threshold;
}

void log(LogLevel level, const std::string& message) {
    if (level > log_threshold()) {
        return;
    }
    const char* name = "warn";
    switch (level) {
        case LogLevel::error:
            name = "error";
            break;
        case LogLevel::warn:
            name = "warn";
            break;
        case LogLevel::info:
            name = "info";
            break;
        case LogLevel::debug:
            name = "debug";
            break;
    }
    std::fprintf(stderr, "%s: %s\n", name, message.c_str());
}

}  // namespace orbitforge
