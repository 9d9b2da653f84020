#pragma once

#include <array>
#include <string>

#include "chainscope/model.hpp"

namespace chainscope {

enum class PowerStructure { NG, MS, RS };  // simultaneous / manufacturer-led / retailer-led

const char* to_string(PowerStructure s);
PowerStructure structure_from_string(const std::string& name);  // throws ConfigError

// Closed-form equilibria. All throw DegenerateDenominator when the relevant
// denominator polynomial in mu vanishes (|.| < 1e-12).
PriceState solve_ng(const ModelParams& p);
PriceState solve_ms(const ModelParams& p);
PriceState solve_rs(const ModelParams& p);
PriceState solve(PowerStructure s, const ModelParams& p);

struct EquilibriumReport {
    PowerStructure structure = PowerStructure::NG;
    PriceState state;
    Profits profit;
};

EquilibriumReport equilibrium_report(PowerStructure s, const ModelParams& p);

enum class Sign { Negative, Zero, Positive };
char sign_char(Sign s);  // '-', '0', '+'

// Numeric sensitivity of the equilibrium components to g, lambda and eta
// (central differences, step 1e-5; sign threshold 1e-9).
struct ComparativeStatics {
    PowerStructure structure = PowerStructure::NG;
    // [component 0..3][wrt 0..2], wrt order {g, lambda, eta}
    std::array<std::array<double, 3>, 4> partial{};
    std::array<std::array<Sign, 3>, 4> sign{};
};

extern const std::array<const char*, 3> kStaticsWrtNames;  // "g","lambda","eta"

ComparativeStatics comparative_statics(PowerStructure s, const ModelParams& p);

}  // namespace chainscope
