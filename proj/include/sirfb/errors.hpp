#pragma once

#include <stdexcept>
#include <string>

namespace sirfb {

/// Invalid scenario configuration or domain-type invariant violation.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Failure during time integration; carries the simulation time at which it occurred.
struct SolverError : std::runtime_error {
    double time;
    SolverError(const std::string& msg, double t)
        : std::runtime_error(msg + " (at t=" + std::to_string(t) + ")"), time(t) {}
};

/// Bisection bracket whose endpoints do not classify differently.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sirfb
