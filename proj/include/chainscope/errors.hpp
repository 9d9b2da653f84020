#pragma once

#include <stdexcept>
#include <string>

namespace chainscope {

struct InvalidParams : std::invalid_argument {
    explicit InvalidParams(const std::string& msg) : std::invalid_argument(msg) {}
};

// A closed-form solve hit a vanishing denominator (substitution degenerate).
struct DegenerateDenominator : std::runtime_error {
    explicit DegenerateDenominator(const std::string& msg) : std::runtime_error(msg) {}
};

// A single map step produced NaN/Inf. Orbit-level routines report divergence
// through status fields instead of throwing this.
struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& msg) : std::runtime_error(msg) {}
};

struct AlreadyStable : std::runtime_error {
    explicit AlreadyStable(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotStabilizable : std::runtime_error {
    explicit NotStabilizable(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoBifurcation : std::runtime_error {
    explicit NoBifurcation(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownPreset : ConfigError {
    explicit UnknownPreset(const std::string& msg) : ConfigError(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace chainscope
