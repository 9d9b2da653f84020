#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chainscope/equilibrium.hpp"
#include "chainscope/model.hpp"

namespace chainscope {

// Per-player adjustment speeds, in state component order (k1,k2,w1,w2).
struct Speeds {
    double g1 = 0.4, g2 = 0.13, g3 = 0.12, g4 = 0.15;

    double operator[](int i) const;
    std::array<double, 4> arr() const { return {g1, g2, g3, g4}; }
    static Speeds from(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
    void validate() const;  // throws InvalidParams unless all > 0
};

struct DynamicsSystem {
    PowerStructure structure = PowerStructure::NG;
    ModelParams params;
    Speeds speeds;
};

// One step of the gradient-adjustment map. Sequential-move structures update
// the leader first and let followers react to the fresh value within the same
// step. Throws NonFiniteState if the input or the result is not finite.
PriceState step(const DynamicsSystem& sys, const PriceState& x);

// Same map without finiteness checks: non-finite values propagate through.
// Orbit-level loops use this and classify divergence from the result.
PriceState step_unchecked(const DynamicsSystem& sys, const PriceState& x);

// Exact Jacobian of the one-step map at x.
Eigen::Matrix4d jacobian(const DynamicsSystem& sys, const PriceState& x);

// Central-difference Jacobian (step h on each component), for cross-checks.
Eigen::Matrix4d jacobian_fd(const DynamicsSystem& sys, const PriceState& x, double h = 1e-6);

struct OrbitResult {
    std::vector<PriceState> states;  // post-transient tail, in order
    bool diverged = false;
    int steps_taken = 0;  // total steps attempted (transient + tail)
};

// Iterate the map: discard `transient` steps, then record `keep` states.
// Divergence = any component non-finite or |component| > escape_radius;
// on divergence the tail is truncated at the last finite state.
OrbitResult iterate(const DynamicsSystem& sys, const PriceState& x0, int transient, int keep,
                    double escape_radius = 1e6);

struct StabilityReport {
    double spectral_radius = 0.0;
    std::array<std::complex<double>, 4> eigenvalues{};
    bool stable = false;  // spectral_radius < 1 - 1e-9
    // Characteristic polynomial coefficients: lambda^4 + zeta3 lambda^3 + ... + zeta0.
    std::array<double, 4> zeta{};  // {zeta0, zeta1, zeta2, zeta3}
    // Jury-table style flags, reported as-is for diagnostics; the stability
    // verdict above comes from the spectral radius only.
    bool jury_f1_positive = false;      // F(1) > 0
    bool jury_fm1_negative = false;     // F(-1) < 0
    bool jury_fm1_positive = false;     // F(-1) > 0 (conventional row)
    bool jury_zeta0_inside = false;     // |zeta0| < 1
    bool jury_kappa_inside = false;     // |kappa0| < |kappa3|
    bool jury_chi_inside = false;       // |chi0| < |chi2|
};

StabilityReport stability_at(const DynamicsSystem& sys, const PriceState& x);

struct FixedPoint {
    PriceState state;
    std::array<bool, 4> active{};  // component participates (not pinned to zero)
    StabilityReport stability;
    double residual = 0.0;  // max |f(x) - x| over components
};

// Enumerate boundary and interior fixed points by pinning each subset of
// components to zero and solving the remaining first-order conditions
// (linear in the state). Singular subsystems are skipped; each skip is
// recorded in `skipped_patterns`.
struct FixedPointScan {
    std::vector<FixedPoint> points;
    std::vector<std::array<bool, 4>> skipped_patterns;
};

FixedPointScan fixed_points(const DynamicsSystem& sys);

}  // namespace chainscope
