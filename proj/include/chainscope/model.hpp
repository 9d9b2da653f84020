#pragma once

#include <array>

#include "chainscope/errors.hpp"

namespace chainscope {

// Decision variables of the four-player pricing game: retail margins k1, k2
// (offline / online retailer) and the manufacturer's wholesale prices w1, w2.
// Component order (k1, k2, w1, w2) is fixed and used by every module.
struct PriceState {
    double k1 = 0.0, k2 = 0.0, w1 = 0.0, w2 = 0.0;

    double operator[](int i) const { return i == 0 ? k1 : i == 1 ? k2 : i == 2 ? w1 : w2; }
    double& operator[](int i) { return i == 0 ? k1 : i == 1 ? k2 : i == 2 ? w1 : w2; }
    std::array<double, 4> arr() const { return {k1, k2, w1, w2}; }
    static PriceState from(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
};

bool operator==(const PriceState& a, const PriceState& b);
inline bool operator!=(const PriceState& a, const PriceState& b) { return !(a == b); }
double max_abs_diff(const PriceState& a, const PriceState& b);
bool all_finite(const PriceState& s);

extern const std::array<const char*, 4> kComponentNames;  // "k1","k2","w1","w2"

struct ModelParams {
    double mu = 0.5;    // cross-channel price sensitivity, 0 <= mu < 1
    double eta = 1.1;   // online channel market base, > 0
    double lam = 0.1;   // demand response to innovativeness, >= 0
    double g = 0.5;     // product innovativeness level, >= 0
    double g0 = 0.1;    // subsidy threshold innovativeness, >= 0
    double ell = 0.1;   // subsidy coefficient, >= 0
    double theta = 0.0; // offline retailer's share of the innovation cost, in [0,1]
    // Unit production cost. Kept for completeness; the normalized demand system
    // absorbs it and no formula in this toolkit consumes it.
    double c = 0.0;
    // By default the subsidy ell*(g-g0)^2 is paid unconditionally; with this
    // flag it is paid only when g >= g0.
    bool subsidy_threshold_mode = false;

    void validate() const;  // throws InvalidParams
    double boost() const { return lam * g; }  // demand shift from innovativeness
    double innovation_cost() const { return 0.5 * lam * g * g; }
    double subsidy() const;
};

struct Demands {
    double q1 = 0.0, q2 = 0.0;
};

struct Profits {
    double pi_r1 = 0.0, pi_r2 = 0.0, pi_m = 0.0;
    double pi_sc = 0.0;  // always the exact sum of the three terms above
};

Demands demand(const PriceState& s, const ModelParams& p);
Profits profits(const PriceState& s, const ModelParams& p);

// Gradient of each player's profit in its own decision under simultaneous
// play, order (k1, k2, w1, w2).
std::array<double, 4> marginal_profits_ng(const PriceState& s, const ModelParams& p);

// Retailers' best-response margins to posted wholesale prices (manufacturer
// leads, retailers follow).
std::array<double, 2> retailer_reactions_ms(double w1, double w2, const ModelParams& p);

// Manufacturer-leader profit gradients in (w1, w2) with the retailer
// reactions substituted into demand; this symmetric pair drives the
// manufacturer-led dynamics and solver.
std::array<double, 2> ms_leader_marginals(double w1, double w2, const ModelParams& p);

// Mixed variant kept alongside the pair above: first component identical to
// ms_leader_marginals, second the raw partial in w2 holding the margins at
// the supplied state (no reaction substitution). Exposed for reference and
// testing; the dynamics do not use it.
std::array<double, 2> manufacturer_marginals_ms(double w1, double w2, const PriceState& at,
                                                const ModelParams& p);

// Manufacturer's best-response wholesale prices to committed margins
// (retailers lead, manufacturer follows).
std::array<double, 2> manufacturer_reactions_rs(double k1, double k2, const ModelParams& p);

// Retailer-leader profit gradients in (k1, k2) with the manufacturer
// reactions substituted into demand.
std::array<double, 2> retailer_marginals_rs(double k1, double k2, const ModelParams& p);

}  // namespace chainscope
