#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chainscope/errors.hpp"
#include "chainscope/model.hpp"

using namespace chainscope;

namespace {

ModelParams baseline() { return ModelParams{}; }

PriceState start() { return PriceState{0.1, 0.1, 0.31, 0.4}; }

}  // namespace

TEST_CASE("default parameters validate and expose derived quantities") {
    ModelParams p = baseline();
    CHECK_NOTHROW(p.validate());
    CHECK(p.boost() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(p.innovation_cost() == doctest::Approx(0.0125).epsilon(1e-15));
    CHECK(p.subsidy() == doctest::Approx(0.1 * 0.4 * 0.4).epsilon(1e-15));
}

TEST_CASE("parameter validation rejects out-of-domain values") {
    ModelParams p = baseline();
    p.mu = 1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.mu = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.eta = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.lam = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.theta = 1.5;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.g = -0.5;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = baseline();
    p.c = std::nan("");
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("subsidy threshold mode zeroes the payment below the threshold") {
    ModelParams p = baseline();
    p.g = 0.05;  // below g0 = 0.1
    CHECK(p.subsidy() == doctest::Approx(0.1 * 0.05 * 0.05));
    p.subsidy_threshold_mode = true;
    CHECK(p.subsidy() == 0.0);
    p.g = 0.5;
    CHECK(p.subsidy() == doctest::Approx(0.016).epsilon(1e-12));
}

TEST_CASE("demand at the reference starting point") {
    const Demands d = demand(start(), baseline());
    CHECK(d.q1 == doctest::Approx(0.89).epsilon(1e-14));
    CHECK(d.q2 == doctest::Approx(0.855).epsilon(1e-14));
}

TEST_CASE("profits at the reference starting point") {
    const Profits pi = profits(start(), baseline());
    CHECK(pi.pi_r1 == doctest::Approx(0.089).epsilon(1e-14));
    CHECK(pi.pi_r2 == doctest::Approx(0.0855).epsilon(1e-14));
    CHECK(pi.pi_m == doctest::Approx(0.6214).epsilon(1e-14));
    CHECK(pi.pi_sc == doctest::Approx(0.089 + 0.0855 + 0.6214).epsilon(1e-14));
}

TEST_CASE("theta moves innovation cost between retailer 1 and manufacturer") {
    ModelParams p0 = baseline();
    ModelParams p7 = baseline();
    p7.theta = 0.7;
    const Profits a = profits(start(), p0);
    const Profits b = profits(start(), p7);
    const double share = 0.7 * p0.innovation_cost();
    CHECK(b.pi_r1 == doctest::Approx(a.pi_r1 - share).epsilon(1e-14));
    CHECK(b.pi_m == doctest::Approx(a.pi_m + share).epsilon(1e-14));
    CHECK(b.pi_sc == doctest::Approx(a.pi_sc).epsilon(1e-14));
}

TEST_CASE("simultaneous marginal profits at the reference starting point") {
    const auto m = marginal_profits_ng(start(), baseline());
    CHECK(m[0] == doctest::Approx(0.79).epsilon(1e-14));
    CHECK(m[1] == doctest::Approx(0.755).epsilon(1e-14));
    CHECK(m[2] == doctest::Approx(0.78).epsilon(1e-14));
    CHECK(m[3] == doctest::Approx(0.61).epsilon(1e-14));
}

TEST_CASE("retailer best responses zero their own marginals") {
    const ModelParams p = baseline();
    const auto k = retailer_reactions_ms(0.31, 0.4, p);
    const PriceState x{k[0], k[1], 0.31, 0.4};
    const auto m = marginal_profits_ng(x, p);
    CHECK(m[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("leader marginals after substituting follower reactions") {
    const ModelParams p = baseline();
    const auto lm = ms_leader_marginals(0.31, 0.4, p);
    // hand-computed: (2 + eta*mu + a*(2+mu) + 2*mu*w2 - 2*(2-mu^2)*w1) / (4 - mu^2)
    CHECK(lm[0] == doctest::Approx(1.99 / 3.75).epsilon(1e-14));
    CHECK(lm[1] == doctest::Approx((2 * 1.1 + 0.5 + 0.05 * 2.5 + 2 * 0.5 * 0.31 - 2 * 1.75 * 0.4) / 3.75)
                       .epsilon(1e-13));
}

TEST_CASE("mixed manufacturer marginal pair is exposed for reference") {
    // first entry substitutes follower reactions, second is the raw partial at `at`
    const auto pm = manufacturer_marginals_ms(0.31, 0.4, start(), baseline());
    CHECK(pm[0] == doctest::Approx(0.530666666667).epsilon(1e-11));
    CHECK(pm[1] == doctest::Approx(0.61).epsilon(1e-14));
}

TEST_CASE("manufacturer reactions zero the wholesale marginals given commissions") {
    const ModelParams p = baseline();
    const auto w = manufacturer_reactions_rs(0.1, 0.1, p);
    const PriceState x{0.1, 0.1, w[0], w[1]};
    const auto m = marginal_profits_ng(x, p);
    CHECK(m[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m[3] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("retailer-led marginals at the reference starting point") {
    const auto r = retailer_marginals_rs(0.1, 0.1, baseline());
    CHECK(r[0] == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("channel symmetry when the preference parameter is one") {
    ModelParams p = baseline();
    p.eta = 1.0;
    const PriceState x{0.2, 0.2, 0.5, 0.5};
    const Demands d = demand(x, p);
    CHECK(d.q1 == doctest::Approx(d.q2).epsilon(1e-15));
    const auto m = marginal_profits_ng(x, p);
    CHECK(m[0] == doctest::Approx(m[1]).epsilon(1e-15));
    CHECK(m[2] == doctest::Approx(m[3]).epsilon(1e-15));
}

TEST_CASE("price state helpers") {
    PriceState x{1, 2, 3, 4};
    CHECK(x[0] == 1);
    CHECK(x[3] == 4);
    CHECK(PriceState::from({{1, 2, 3, 4}}) == x);
    PriceState y = x;
    y.w2 = 4.5;
    CHECK(max_abs_diff(x, y) == doctest::Approx(0.5));
    CHECK(x != y);
    CHECK(all_finite(x));
    y.k1 = std::nan("");
    CHECK_FALSE(all_finite(y));
    CHECK(std::string(kComponentNames[2]) == "w1");
}
