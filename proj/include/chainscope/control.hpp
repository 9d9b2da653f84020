#pragma once

#include <string>

#include "chainscope/dynamics.hpp"

namespace chainscope {

enum class ControlScheme {
    ParameterAdjustment,  // scale all speeds by (1 - upsilon)
    DelayedFeedback,      // scale all speeds by 1 / (1 + Z)
};

const char* to_string(ControlScheme s);
ControlScheme scheme_from_string(const std::string& name);  // throws ConfigError

// Effective speeds under the control (both schemes reduce to an exact
// uniform scaling of the adjustment speeds).
Speeds controlled_speeds(ControlScheme scheme, const Speeds& base, double gain);

// One controlled step; bit-identical to step() with controlled_speeds().
PriceState step_controlled(ControlScheme scheme, double gain, const DynamicsSystem& sys,
                           const PriceState& x);

struct ControlThreshold {
    ControlScheme scheme = ControlScheme::ParameterAdjustment;
    double gain = 0.0;          // minimal stabilizing gain found
    double spectral_radius = 0.0;  // radius at that gain
};

// Smallest gain that renders the interior equilibrium of `sys` locally stable,
// found by bisection on the spectral radius (tolerance `tol` on the gain).
// Throws AlreadyStable when the uncontrolled system is stable, and
// NotStabilizable when even gain = gain_max fails.
ControlThreshold min_stabilizing_gain(ControlScheme scheme, const DynamicsSystem& sys,
                                      double gain_max = 64.0, double tol = 1e-3);

}  // namespace chainscope
