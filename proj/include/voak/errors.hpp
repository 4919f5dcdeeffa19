#pragma once

#include <stdexcept>
#include <string>

namespace voak {

// Caller misuse: mismatched fields, bad shapes, malformed config.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation whose preconditions (characteristic bounds, degree caps)
// are not met.  Deliberately distinct from usage_error so the CLI can map
// it to its own exit code.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested result does not fit inside the weight cutoff.
struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace voak
