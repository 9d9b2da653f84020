#include "chainscope/model.hpp"

#include <cmath>

namespace chainscope {

const std::array<const char*, 4> kComponentNames = {"k1", "k2", "w1", "w2"};

bool operator==(const PriceState& a, const PriceState& b) {
    return a.k1 == b.k1 && a.k2 == b.k2 && a.w1 == b.w1 && a.w2 == b.w2;
}

double max_abs_diff(const PriceState& a, const PriceState& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool all_finite(const PriceState& s) {
    return std::isfinite(s.k1) && std::isfinite(s.k2) && std::isfinite(s.w1) &&
           std::isfinite(s.w2);
}

void ModelParams::validate() const {
    if (!(mu >= 0.0 && mu < 1.0)) throw InvalidParams("params.mu must satisfy 0 <= mu < 1");
    if (!(eta > 0.0)) throw InvalidParams("params.eta must be > 0");
    if (!(lam >= 0.0)) throw InvalidParams("params.lambda must be >= 0");
    if (!(g >= 0.0)) throw InvalidParams("params.g must be >= 0");
    if (!(g0 >= 0.0)) throw InvalidParams("params.g0 must be >= 0");
    if (!(ell >= 0.0)) throw InvalidParams("params.ell must be >= 0");
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidParams("params.theta must lie in [0,1]");
    if (!std::isfinite(c)) throw InvalidParams("params.c must be finite");
}

double ModelParams::subsidy() const {
    if (subsidy_threshold_mode && g < g0) return 0.0;
    const double d = g - g0;
    return ell * d * d;
}

Demands demand(const PriceState& s, const ModelParams& p) {
    const double a = p.boost();
    const double p1 = s.k1 + s.w1, p2 = s.k2 + s.w2;
    return {1.0 - p1 + p.mu * p2 + a, p.eta - p2 + p.mu * p1 + a};
}

Profits profits(const PriceState& s, const ModelParams& p) {
    const Demands q = demand(s, p);
    const double cost = p.innovation_cost();
    Profits out;
    out.pi_r1 = s.k1 * q.q1 - p.theta * cost;
    out.pi_r2 = s.k2 * q.q2;
    out.pi_m = s.w1 * q.q1 + s.w2 * q.q2 - (1.0 - p.theta) * cost + p.subsidy();
    out.pi_sc = out.pi_r1 + out.pi_r2 + out.pi_m;
    return out;
}

std::array<double, 4> marginal_profits_ng(const PriceState& s, const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    return {
        1.0 - 2.0 * s.k1 - s.w1 + a + (s.k2 + s.w2) * mu,
        p.eta - 2.0 * s.k2 - s.w2 + a + (s.k1 + s.w1) * mu,
        1.0 - s.k1 - 2.0 * s.w1 + a + s.k2 * mu + 2.0 * s.w2 * mu,
        p.eta - s.k2 - 2.0 * s.w2 + a + s.k1 * mu + 2.0 * s.w1 * mu,
    };
}

std::array<double, 2> retailer_reactions_ms(double w1, double w2, const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    const double d = 4.0 - mu * mu;
    return {
        (2.0 + p.eta * mu + a * (2.0 + mu) + mu * w2 + (mu * mu - 2.0) * w1) / d,
        (2.0 * p.eta + mu + a * (2.0 + mu) + mu * w1 + (mu * mu - 2.0) * w2) / d,
    };
}

std::array<double, 2> ms_leader_marginals(double w1, double w2, const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    const double d = 4.0 - mu * mu;
    return {
        (2.0 + p.eta * mu + a * (2.0 + mu) + 2.0 * mu * w2 - 2.0 * (2.0 - mu * mu) * w1) / d,
        (2.0 * p.eta + mu + a * (2.0 + mu) + 2.0 * mu * w1 - 2.0 * (2.0 - mu * mu) * w2) / d,
    };
}

std::array<double, 2> manufacturer_marginals_ms(double w1, double w2, const PriceState& at,
                                                const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    const double first = ms_leader_marginals(w1, w2, p)[0];
    // Raw partial in w2 holding the margins fixed at `at` (no substitution).
    const double second =
        p.eta - at.k2 - 2.0 * w2 + a + at.k1 * mu + 2.0 * w1 * mu;
    return {first, second};
}

std::array<double, 2> manufacturer_reactions_rs(double k1, double k2, const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    const double d = 2.0 - 2.0 * mu * mu;
    return {
        (1.0 + p.eta * mu + a * (1.0 + mu) + k1 * (mu * mu - 1.0)) / d,
        (p.eta + mu + a * (1.0 + mu) + k2 * (mu * mu - 1.0)) / d,
    };
}

std::array<double, 2> retailer_marginals_rs(double k1, double k2, const ModelParams& p) {
    const double a = p.boost(), mu = p.mu;
    return {
        0.5 * (1.0 - 2.0 * k1 + a + k2 * mu),
        0.5 * (p.eta - 2.0 * k2 + a + k1 * mu),
    };
}

}  // namespace chainscope
