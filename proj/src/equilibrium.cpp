#include "chainscope/equilibrium.hpp"

#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

const char* to_string(PowerStructure s) {
    switch (s) {
        case PowerStructure::NG: return "NG";
        case PowerStructure::MS: return "MS";
        case PowerStructure::RS: return "RS";
    }
    return "NG";
}

PowerStructure structure_from_string(const std::string& name) {
    if (name == "NG" || name == "ng") return PowerStructure::NG;
    if (name == "MS" || name == "ms") return PowerStructure::MS;
    if (name == "RS" || name == "rs") return PowerStructure::RS;
    throw ConfigError("unknown power structure '" + name + "' (expected NG, MS or RS)");
}

namespace {

double checked_div(double num, double den, const char* what) {
    if (std::abs(den) < 1e-12) throw DegenerateDenominator(what);
    return num / den;
}

}  // namespace

PriceState solve_ng(const ModelParams& p) {
    const double a = p.boost(), mu = p.mu, eta = p.eta;
    const double mu2 = mu * mu;
    const double dk = 9.0 - mu2;
    const double dw = 9.0 - 10.0 * mu2 + mu2 * mu2;
    PriceState s;
    s.k1 = checked_div(3.0 + eta * mu + a * (3.0 + mu), dk, "simultaneous-move margin denominator");
    s.k2 = checked_div(3.0 * eta + mu + a * (3.0 + mu), dk, "simultaneous-move margin denominator");
    s.w1 = checked_div(3.0 + 4.0 * eta * mu + mu2 + a * (3.0 + 4.0 * mu + mu2), dw,
                       "simultaneous-move wholesale denominator");
    s.w2 = checked_div(4.0 * mu + eta * (3.0 + mu2) + a * (3.0 + 4.0 * mu + mu2), dw,
                       "simultaneous-move wholesale denominator");
    return s;
}

PriceState solve_ms(const ModelParams& p) {
    const double a = p.boost(), mu = p.mu, eta = p.eta;
    const double mu2 = mu * mu;
    const double dk = 8.0 - 2.0 * mu2;
    const double dw = 2.0 - 2.0 * mu2;
    PriceState s;
    s.k1 = checked_div(2.0 + eta * mu + a * (2.0 + mu), dk, "manufacturer-led margin denominator");
    s.k2 = checked_div(2.0 * eta + mu + a * (2.0 + mu), dk, "manufacturer-led margin denominator");
    s.w1 = checked_div(1.0 + eta * mu + a * (1.0 + mu), dw, "manufacturer-led wholesale denominator");
    s.w2 = checked_div(eta + mu + a * (1.0 + mu), dw, "manufacturer-led wholesale denominator");
    return s;
}

PriceState solve_rs(const ModelParams& p) {
    const double a = p.boost(), mu = p.mu, eta = p.eta;
    const double mu2 = mu * mu;
    const double dk = 4.0 - mu2;
    const double dw = 2.0 * (4.0 - 5.0 * mu2 + mu2 * mu2);
    PriceState s;
    s.k1 = checked_div(2.0 + eta * mu + a * (2.0 + mu), dk, "retailer-led margin denominator");
    s.k2 = checked_div(2.0 * eta + mu + a * (2.0 + mu), dk, "retailer-led margin denominator");
    s.w1 = checked_div(2.0 + 3.0 * eta * mu + mu2 + a * (2.0 + 3.0 * mu + mu2), dw,
                       "retailer-led wholesale denominator");
    s.w2 = checked_div(3.0 * mu + eta * (2.0 + mu2) + a * (2.0 + 3.0 * mu + mu2), dw,
                       "retailer-led wholesale denominator");
    return s;
}

PriceState solve(PowerStructure s, const ModelParams& p) {
    switch (s) {
        case PowerStructure::NG: return solve_ng(p);
        case PowerStructure::MS: return solve_ms(p);
        case PowerStructure::RS: return solve_rs(p);
    }
    return solve_ng(p);
}

EquilibriumReport equilibrium_report(PowerStructure s, const ModelParams& p) {
    EquilibriumReport r;
    r.structure = s;
    r.state = solve(s, p);
    r.profit = profits(r.state, p);
    return r;
}

char sign_char(Sign s) {
    switch (s) {
        case Sign::Negative: return '-';
        case Sign::Zero: return '0';
        case Sign::Positive: return '+';
    }
    return '0';
}

const std::array<const char*, 3> kStaticsWrtNames = {"g", "lambda", "eta"};

ComparativeStatics comparative_statics(PowerStructure s, const ModelParams& p) {
    constexpr double h = 1e-5;
    constexpr double zero_tol = 1e-9;
    ComparativeStatics out;
    out.structure = s;
    for (int wrt = 0; wrt < 3; ++wrt) {
        ModelParams lo = p, hi = p;
        double* flo = wrt == 0 ? &lo.g : wrt == 1 ? &lo.lam : &lo.eta;
        double* fhi = wrt == 0 ? &hi.g : wrt == 1 ? &hi.lam : &hi.eta;
        *flo -= h;
        *fhi += h;
        const PriceState a = solve(s, lo), b = solve(s, hi);
        for (int comp = 0; comp < 4; ++comp) {
            const double d = (b[comp] - a[comp]) / (2.0 * h);
            out.partial[comp][wrt] = d;
            out.sign[comp][wrt] =
                d > zero_tol ? Sign::Positive : d < -zero_tol ? Sign::Negative : Sign::Zero;
        }
    }
    return out;
}

}  // namespace chainscope
