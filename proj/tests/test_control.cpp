#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "chainscope/control.hpp"
#include "chainscope/equilibrium.hpp"
#include "chainscope/errors.hpp"

using namespace chainscope;

namespace {

const PriceState kStart{0.1, 0.1, 0.31, 0.4};

DynamicsSystem unstable_ng() {
    DynamicsSystem sys{PowerStructure::NG, ModelParams{}, Speeds{}};
    sys.speeds.g1 = 2.9;
    return sys;
}

DynamicsSystem unstable_rs() {
    DynamicsSystem sys{PowerStructure::RS, ModelParams{}, Speeds{}};
    sys.speeds.g1 = 4.0;
    return sys;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    CHECK(std::string(to_string(ControlScheme::ParameterAdjustment)) == "parameter");
    CHECK(std::string(to_string(ControlScheme::DelayedFeedback)) == "delayed");
    CHECK(scheme_from_string("parameter") == ControlScheme::ParameterAdjustment);
    CHECK(scheme_from_string("delayed") == ControlScheme::DelayedFeedback);
    CHECK_THROWS_AS(scheme_from_string("pid"), ConfigError);
}

TEST_CASE("both schemes reduce to exact speed scaling") {
    const Speeds sp;
    const Speeds damped = controlled_speeds(ControlScheme::ParameterAdjustment, sp, 0.25);
    for (int i = 0; i < 4; ++i) CHECK(damped[i] == sp[i] * (1.0 - 0.25));

    const Speeds fed = controlled_speeds(ControlScheme::DelayedFeedback, sp, 0.5);
    for (int i = 0; i < 4; ++i) CHECK(fed[i] == sp[i] / 1.5);
}

TEST_CASE("gain domains are enforced") {
    const Speeds sp;
    CHECK_NOTHROW(controlled_speeds(ControlScheme::ParameterAdjustment, sp, 0.0));
    CHECK_NOTHROW(controlled_speeds(ControlScheme::ParameterAdjustment, sp, 1.0));
    CHECK_THROWS_AS(controlled_speeds(ControlScheme::ParameterAdjustment, sp, -0.1), InvalidParams);
    CHECK_THROWS_AS(controlled_speeds(ControlScheme::ParameterAdjustment, sp, 1.1), InvalidParams);
    CHECK_NOTHROW(controlled_speeds(ControlScheme::DelayedFeedback, sp, 7.0));
    CHECK_THROWS_AS(controlled_speeds(ControlScheme::DelayedFeedback, sp, -0.01), InvalidParams);
}

TEST_CASE("zero gain leaves the map untouched, full damping freezes it") {
    const DynamicsSystem sys = unstable_ng();
    PriceState x = kStart;
    for (int t = 0; t < 50; ++t) {
        const PriceState plain = step(sys, x);
        CHECK(step_controlled(ControlScheme::ParameterAdjustment, 0.0, sys, x) == plain);
        CHECK(step_controlled(ControlScheme::DelayedFeedback, 0.0, sys, x) == plain);
        x = plain;
    }
    CHECK(step_controlled(ControlScheme::ParameterAdjustment, 1.0, sys, kStart) == kStart);
}

TEST_CASE("controlled step equals the plain step of the damped system") {
    // the equivalence is exact, not approximate, over a long orbit
    for (auto scheme : {ControlScheme::ParameterAdjustment, ControlScheme::DelayedFeedback}) {
        const double gain = scheme == ControlScheme::ParameterAdjustment ? 0.3 : 0.8;
        const DynamicsSystem sys{PowerStructure::MS, ModelParams{}, Speeds{}};
        DynamicsSystem damped = sys;
        damped.speeds = controlled_speeds(scheme, sys.speeds, gain);
        PriceState a = kStart;
        PriceState b = kStart;
        for (int t = 0; t < 1000; ++t) {
            a = step_controlled(scheme, gain, sys, a);
            b = step(damped, b);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("controls never move the fixed point") {
    for (auto s : {PowerStructure::NG, PowerStructure::MS, PowerStructure::RS}) {
        const DynamicsSystem sys{s, ModelParams{}, Speeds{}};
        const PriceState e = solve(s, sys.params);
        for (double gain : {0.1, 0.5, 0.9}) {
            CHECK(max_abs_diff(step_controlled(ControlScheme::ParameterAdjustment, gain, sys, e),
                               e) <= 1e-12);
            CHECK(max_abs_diff(step_controlled(ControlScheme::DelayedFeedback, gain, sys, e), e) <=
                  1e-12);
        }
    }
}

TEST_CASE("minimal stabilizing damping for the fast simultaneous game") {
    const DynamicsSystem sys = unstable_ng();
    const ControlThreshold th = min_stabilizing_gain(ControlScheme::ParameterAdjustment, sys);
    CHECK(th.scheme == ControlScheme::ParameterAdjustment);
    CHECK(th.gain == doctest::Approx(0.2178).epsilon(5e-3));
    CHECK(th.spectral_radius < 1.0);

    // bracketing: the returned gain works, one tolerance below does not
    const PriceState e = solve_ng(sys.params);
    DynamicsSystem below = sys;
    below.speeds = controlled_speeds(ControlScheme::ParameterAdjustment, sys.speeds,
                                     th.gain - 2e-3);
    CHECK(stability_at(below, e).spectral_radius >= 1.0 - 1e-9);
}

TEST_CASE("minimal stabilizing feedback for the fast simultaneous game") {
    const ControlThreshold th =
        min_stabilizing_gain(ControlScheme::DelayedFeedback, unstable_ng());
    CHECK(th.gain == doctest::Approx(0.2783).epsilon(5e-3));
    CHECK(th.spectral_radius < 1.0);
}

TEST_CASE("minimal gains for the fast retailer-led game") {
    const DynamicsSystem sys = unstable_rs();
    const ControlThreshold a = min_stabilizing_gain(ControlScheme::ParameterAdjustment, sys);
    CHECK(a.gain == doctest::Approx(0.3008).epsilon(5e-3));
    const ControlThreshold b = min_stabilizing_gain(ControlScheme::DelayedFeedback, sys);
    CHECK(b.gain == doctest::Approx(0.4307).epsilon(5e-3));
}

TEST_CASE("an already-stable system is reported, not bisected") {
    const DynamicsSystem sys{PowerStructure::NG, ModelParams{}, Speeds{}};
    CHECK_THROWS_AS(min_stabilizing_gain(ControlScheme::ParameterAdjustment, sys), AlreadyStable);
}

TEST_CASE("a gain cap below the threshold reports failure to stabilize") {
    CHECK_THROWS_AS(min_stabilizing_gain(ControlScheme::DelayedFeedback, unstable_ng(), 0.05),
                    NotStabilizable);
}

TEST_CASE("orbits converge under a stabilizing gain and fluctuate without one") {
    const DynamicsSystem sys = unstable_ng();
    const PriceState e = solve_ng(sys.params);
    const ControlThreshold th = min_stabilizing_gain(ControlScheme::ParameterAdjustment, sys);

    DynamicsSystem damped = sys;
    damped.speeds = controlled_speeds(ControlScheme::ParameterAdjustment, sys.speeds,
                                      th.gain + 0.02);
    const OrbitResult tamed = iterate(damped, kStart, 900, 100);
    REQUIRE_FALSE(tamed.diverged);
    for (const auto& x : tamed.states) CHECK(max_abs_diff(x, e) < 1e-3);

    const OrbitResult wild = iterate(sys, kStart, 900, 100);
    REQUIRE_FALSE(wild.diverged);
    double spread = 0.0;
    for (const auto& x : wild.states) spread = std::max(spread, max_abs_diff(x, e));
    CHECK(spread > 0.05);
}
