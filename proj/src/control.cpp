#include "chainscope/control.hpp"

#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

const char* to_string(ControlScheme s) {
    return s == ControlScheme::ParameterAdjustment ? "parameter" : "delayed";
}

ControlScheme scheme_from_string(const std::string& name) {
    if (name == "parameter") return ControlScheme::ParameterAdjustment;
    if (name == "delayed") return ControlScheme::DelayedFeedback;
    throw ConfigError("unknown control scheme '" + name + "' (expected parameter or delayed)");
}

Speeds controlled_speeds(ControlScheme scheme, const Speeds& base, double gain) {
    Speeds s = base;
    if (scheme == ControlScheme::ParameterAdjustment) {
        if (!(gain >= 0.0 && gain <= 1.0))
            throw InvalidParams("parameter-adjustment gain must lie in [0,1]");
        const double factor = 1.0 - gain;
        s.g1 *= factor;
        s.g2 *= factor;
        s.g3 *= factor;
        s.g4 *= factor;
    } else {
        if (!(gain >= 0.0)) throw InvalidParams("delayed-feedback gain must be >= 0");
        const double shift = 1.0 + gain;
        s.g1 /= shift;
        s.g2 /= shift;
        s.g3 /= shift;
        s.g4 /= shift;
    }
    return s;
}

PriceState step_controlled(ControlScheme scheme, double gain, const DynamicsSystem& sys,
                           const PriceState& x) {
    DynamicsSystem damped = sys;
    damped.speeds = controlled_speeds(scheme, sys.speeds, gain);
    return step(damped, x);
}

ControlThreshold min_stabilizing_gain(ControlScheme scheme, const DynamicsSystem& sys,
                                      double gain_max, double tol) {
    if (!(gain_max > 0.0)) throw InvalidParams("gain_max must be > 0");
    if (!(tol > 0.0)) throw InvalidParams("tol must be > 0");
    const PriceState star = solve(sys.structure, sys.params);

    auto radius_at = [&](double gain) {
        DynamicsSystem damped = sys;
        damped.speeds = controlled_speeds(scheme, sys.speeds, gain);
        return stability_at(damped, star).spectral_radius;
    };

    const double r0 = radius_at(0.0);
    if (r0 < 1.0 - 1e-9)
        throw AlreadyStable("uncontrolled system is already stable (spectral radius " +
                            std::to_string(r0) + ")");

    // A gain of exactly 1 freezes the parameter-adjustment map (radius 1); stay below it.
    double hi = scheme == ControlScheme::ParameterAdjustment ? std::min(gain_max, 1.0 - 1e-6)
                                                             : gain_max;
    if (!(radius_at(hi) < 1.0))
        throw NotStabilizable("spectral radius still >= 1 at maximum gain " + std::to_string(hi));

    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (radius_at(mid) < 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return {scheme, hi, radius_at(hi)};
}

}  // namespace chainscope
