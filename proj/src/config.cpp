#include "chainscope/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "chainscope/csv.hpp"
#include "chainscope/errors.hpp"

namespace chainscope {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || !end || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse number from '" + value + "'");
    return d;
}

int parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || !end || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse integer from '" + value + "'");
    return static_cast<int>(n);
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    throw ConfigError("key '" + key + "': cannot parse boolean from '" + value + "'");
}

int component_index(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    for (int i = 0; i < 4; ++i)
        if (v == kComponentNames[i]) return i;
    throw ConfigError("key '" + key + "': expected one of k1,k2,w1,w2, got '" + value + "'");
}

}  // namespace

std::vector<std::string> config_keys() {
    return {
        "structure",
        "params.mu", "params.eta", "params.lambda", "params.g", "params.g0", "params.ell",
        "params.theta", "params.c", "params.subsidy_threshold_mode",
        "speeds.g1", "speeds.g2", "speeds.g3", "speeds.g4",
        "x0.k1", "x0.k2", "x0.w1", "x0.w2",
        "sim.steps",
        "axis.key", "axis.lo", "axis.hi", "axis.samples",
        "sweep.transient", "sweep.tail", "sweep.record",
        "lle.steps",
        "attractor.tail", "attractor.tol",
        "basin.comp_x", "basin.comp_y", "basin.x_lo", "basin.x_hi", "basin.y_lo", "basin.y_hi",
        "basin.nx", "basin.ny", "basin.max_iter", "basin.conv_tol",
        "surface.eta_lo", "surface.eta_hi", "surface.eta_samples",
        "surface.lambda_lo", "surface.lambda_hi", "surface.lambda_samples",
        "control.scheme", "control.gain", "control.gain_lo", "control.gain_hi",
        "control.gain_samples", "control.gain_max", "control.tol",
        "escape_radius", "workers", "plot", "out",
    };
}

void apply_setting(RunConfig& c, const std::string& rawkey, const std::string& value) {
    const std::string key = trim(rawkey);
    const std::string v = trim(value);
    if (key == "structure") c.structure = structure_from_string(v);
    else if (key == "params.mu") c.params.mu = parse_double(key, v);
    else if (key == "params.eta") c.params.eta = parse_double(key, v);
    else if (key == "params.lambda") c.params.lam = parse_double(key, v);
    else if (key == "params.g") c.params.g = parse_double(key, v);
    else if (key == "params.g0") c.params.g0 = parse_double(key, v);
    else if (key == "params.ell") c.params.ell = parse_double(key, v);
    else if (key == "params.theta") c.params.theta = parse_double(key, v);
    else if (key == "params.c") c.params.c = parse_double(key, v);
    else if (key == "params.subsidy_threshold_mode")
        c.params.subsidy_threshold_mode = parse_bool(key, v);
    else if (key == "speeds.g1") c.speeds.g1 = parse_double(key, v);
    else if (key == "speeds.g2") c.speeds.g2 = parse_double(key, v);
    else if (key == "speeds.g3") c.speeds.g3 = parse_double(key, v);
    else if (key == "speeds.g4") c.speeds.g4 = parse_double(key, v);
    else if (key == "x0.k1") c.x0.k1 = parse_double(key, v);
    else if (key == "x0.k2") c.x0.k2 = parse_double(key, v);
    else if (key == "x0.w1") c.x0.w1 = parse_double(key, v);
    else if (key == "x0.w2") c.x0.w2 = parse_double(key, v);
    else if (key == "sim.steps") c.sim_steps = parse_int(key, v);
    else if (key == "axis.key") c.axis.key = v;
    else if (key == "axis.lo") c.axis.lo = parse_double(key, v);
    else if (key == "axis.hi") c.axis.hi = parse_double(key, v);
    else if (key == "axis.samples") c.axis.samples = parse_int(key, v);
    else if (key == "sweep.transient") c.transient = parse_int(key, v);
    else if (key == "sweep.tail") c.tail = parse_int(key, v);
    else if (key == "sweep.record") c.record = parse_int(key, v);
    else if (key == "lle.steps") c.lle_steps = parse_int(key, v);
    else if (key == "attractor.tail") c.attractor_tail = parse_int(key, v);
    else if (key == "attractor.tol") c.cluster_tol = parse_double(key, v);
    else if (key == "basin.comp_x") c.basin_comp_x = component_index(key, v);
    else if (key == "basin.comp_y") c.basin_comp_y = component_index(key, v);
    else if (key == "basin.x_lo") c.basin_x_lo = parse_double(key, v);
    else if (key == "basin.x_hi") c.basin_x_hi = parse_double(key, v);
    else if (key == "basin.y_lo") c.basin_y_lo = parse_double(key, v);
    else if (key == "basin.y_hi") c.basin_y_hi = parse_double(key, v);
    else if (key == "basin.nx") c.basin_nx = parse_int(key, v);
    else if (key == "basin.ny") c.basin_ny = parse_int(key, v);
    else if (key == "basin.max_iter") c.basin_max_iter = parse_int(key, v);
    else if (key == "basin.conv_tol") c.basin_conv_tol = parse_double(key, v);
    else if (key == "surface.eta_lo") c.surface_eta_lo = parse_double(key, v);
    else if (key == "surface.eta_hi") c.surface_eta_hi = parse_double(key, v);
    else if (key == "surface.eta_samples") c.surface_eta_samples = parse_int(key, v);
    else if (key == "surface.lambda_lo") c.surface_lambda_lo = parse_double(key, v);
    else if (key == "surface.lambda_hi") c.surface_lambda_hi = parse_double(key, v);
    else if (key == "surface.lambda_samples") c.surface_lambda_samples = parse_int(key, v);
    else if (key == "control.scheme") {
        if (v != "none" && v != "parameter" && v != "delayed")
            throw ConfigError("control.scheme must be none, parameter or delayed");
        c.control_scheme = v;
    }
    else if (key == "control.gain") c.control_gain = parse_double(key, v);
    else if (key == "control.gain_lo") c.control_gain_lo = parse_double(key, v);
    else if (key == "control.gain_hi") c.control_gain_hi = parse_double(key, v);
    else if (key == "control.gain_samples") c.control_gain_samples = parse_int(key, v);
    else if (key == "control.gain_max") c.control_gain_max = parse_double(key, v);
    else if (key == "control.tol") c.control_tol = parse_double(key, v);
    else if (key == "escape_radius") c.escape_radius = parse_double(key, v);
    else if (key == "workers") c.workers = parse_int(key, v);
    else if (key == "plot") c.plot = parse_bool(key, v);
    else if (key == "out") c.out_dir = v;
    else throw ConfigError("unknown config key '" + key + "'");
}

std::string get_setting(const RunConfig& c, const std::string& key) {
    if (key == "structure") return to_string(c.structure);
    if (key == "params.mu") return fmt17(c.params.mu);
    if (key == "params.eta") return fmt17(c.params.eta);
    if (key == "params.lambda") return fmt17(c.params.lam);
    if (key == "params.g") return fmt17(c.params.g);
    if (key == "params.g0") return fmt17(c.params.g0);
    if (key == "params.ell") return fmt17(c.params.ell);
    if (key == "params.theta") return fmt17(c.params.theta);
    if (key == "params.c") return fmt17(c.params.c);
    if (key == "params.subsidy_threshold_mode") return c.params.subsidy_threshold_mode ? "1" : "0";
    if (key == "speeds.g1") return fmt17(c.speeds.g1);
    if (key == "speeds.g2") return fmt17(c.speeds.g2);
    if (key == "speeds.g3") return fmt17(c.speeds.g3);
    if (key == "speeds.g4") return fmt17(c.speeds.g4);
    if (key == "x0.k1") return fmt17(c.x0.k1);
    if (key == "x0.k2") return fmt17(c.x0.k2);
    if (key == "x0.w1") return fmt17(c.x0.w1);
    if (key == "x0.w2") return fmt17(c.x0.w2);
    if (key == "sim.steps") return std::to_string(c.sim_steps);
    if (key == "axis.key") return c.axis.key;
    if (key == "axis.lo") return fmt17(c.axis.lo);
    if (key == "axis.hi") return fmt17(c.axis.hi);
    if (key == "axis.samples") return std::to_string(c.axis.samples);
    if (key == "sweep.transient") return std::to_string(c.transient);
    if (key == "sweep.tail") return std::to_string(c.tail);
    if (key == "sweep.record") return std::to_string(c.record);
    if (key == "lle.steps") return std::to_string(c.lle_steps);
    if (key == "attractor.tail") return std::to_string(c.attractor_tail);
    if (key == "attractor.tol") return fmt17(c.cluster_tol);
    if (key == "basin.comp_x") return kComponentNames[c.basin_comp_x];
    if (key == "basin.comp_y") return kComponentNames[c.basin_comp_y];
    if (key == "basin.x_lo") return fmt17(c.basin_x_lo);
    if (key == "basin.x_hi") return fmt17(c.basin_x_hi);
    if (key == "basin.y_lo") return fmt17(c.basin_y_lo);
    if (key == "basin.y_hi") return fmt17(c.basin_y_hi);
    if (key == "basin.nx") return std::to_string(c.basin_nx);
    if (key == "basin.ny") return std::to_string(c.basin_ny);
    if (key == "basin.max_iter") return std::to_string(c.basin_max_iter);
    if (key == "basin.conv_tol") return fmt17(c.basin_conv_tol);
    if (key == "surface.eta_lo") return fmt17(c.surface_eta_lo);
    if (key == "surface.eta_hi") return fmt17(c.surface_eta_hi);
    if (key == "surface.eta_samples") return std::to_string(c.surface_eta_samples);
    if (key == "surface.lambda_lo") return fmt17(c.surface_lambda_lo);
    if (key == "surface.lambda_hi") return fmt17(c.surface_lambda_hi);
    if (key == "surface.lambda_samples") return std::to_string(c.surface_lambda_samples);
    if (key == "control.scheme") return c.control_scheme;
    if (key == "control.gain") return fmt17(c.control_gain);
    if (key == "control.gain_lo") return fmt17(c.control_gain_lo);
    if (key == "control.gain_hi") return fmt17(c.control_gain_hi);
    if (key == "control.gain_samples") return std::to_string(c.control_gain_samples);
    if (key == "control.gain_max") return fmt17(c.control_gain_max);
    if (key == "control.tol") return fmt17(c.control_tol);
    if (key == "escape_radius") return fmt17(c.escape_radius);
    if (key == "workers") return std::to_string(c.workers);
    if (key == "plot") return c.plot ? "1" : "0";
    if (key == "out") return c.out_dir;
    throw ConfigError("unknown config key '" + key + "'");
}

std::string render_config(const RunConfig& c) {
    std::string out;
    for (const auto& key : config_keys()) out += key + " = " + get_setting(c, key) + "\n";
    return out;
}

bool RunConfig::operator==(const RunConfig& o) const {
    return render_config(*this) == render_config(o);
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        try {
            apply_setting(base, t.substr(0, eq), t.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    return parse_config(read_text_file(path), std::move(base));
}

const std::vector<Preset>& presets() {
    using S = std::vector<std::pair<std::string, std::string>>;
    static const std::vector<Preset> table = [] {
        std::vector<Preset> t;
        // Equilibrium tables at baseline parameters.
        t.push_back({"table3", "equilibrium", S{}});
        t.push_back({"table4", "equilibrium", S{}});
        // Largest-Lyapunov sweeps over commission adjustment speeds.
        auto lle = [](const char* name, const char* st, const char* key, const char* hi) {
            return Preset{name, "lyapunov",
                          S{{"structure", st},
                            {"axis.key", key},
                            {"axis.lo", "0.01"},
                            {"axis.hi", hi},
                            {"axis.samples", "400"},
                            {"sweep.transient", "2000"},
                            {"lle.steps", "5000"}}};
        };
        t.push_back(lle("fig1a", "NG", "speeds.g1", "3"));
        t.push_back(lle("fig1b", "NG", "speeds.g2", "3"));
        t.push_back(lle("fig1c", "MS", "speeds.g1", "3"));
        t.push_back(lle("fig1d", "MS", "speeds.g2", "3"));
        t.push_back(lle("fig1e", "RS", "speeds.g1", "4"));
        t.push_back(lle("fig1f", "RS", "speeds.g2", "4"));
        // Long-run attractors at fast commission adjustment.
        auto att = [](const char* name, const char* st, const char* g1) {
            return Preset{name, "attractor",
                          S{{"structure", st},
                            {"speeds.g1", g1},
                            {"sweep.transient", "2000"},
                            {"attractor.tail", "512"},
                            {"lle.steps", "5000"}}};
        };
        t.push_back(att("fig2a", "NG", "2.95"));
        t.push_back(att("fig2b", "MS", "2.95"));
        t.push_back(att("fig2c", "RS", "4"));
        // Attraction domains in the (k1, k2) initial plane.
        auto basin = [](const char* name, const char* st, const char* g1) {
            S s{{"structure", st}};
            if (g1) s.emplace_back("speeds.g1", g1);
            return Preset{name, "basin", std::move(s)};
        };
        t.push_back(basin("fig3a", "NG", nullptr));
        t.push_back(basin("fig3b", "NG", "2.1"));
        t.push_back(basin("fig3c", "MS", nullptr));
        t.push_back(basin("fig3d", "MS", "2"));
        t.push_back(basin("fig3e", "RS", nullptr));
        t.push_back(basin("fig3f", "RS", "2.7"));
        // Bifurcation sweeps over mu / eta / lambda.
        auto bif = [](const char* name, const char* st, const char* key, const char* lo,
                      const char* hi) {
            return Preset{name, "bifurcate",
                          S{{"structure", st},
                            {"axis.key", key},
                            {"axis.lo", lo},
                            {"axis.hi", hi},
                            {"axis.samples", "500"},
                            {"sweep.transient", "2000"},
                            {"sweep.tail", "200"},
                            {"sweep.record", "100"}}};
        };
        t.push_back(bif("fig4a", "NG", "params.mu", "0", "1"));
        t.push_back(bif("fig4b", "MS", "params.mu", "0", "1"));
        t.push_back(bif("fig4c", "RS", "params.mu", "0", "1"));
        t.push_back(bif("fig5a", "NG", "params.eta", "1", "14"));
        t.push_back(bif("fig5b", "MS", "params.eta", "1", "14"));
        t.push_back(bif("fig5c", "RS", "params.eta", "1", "14"));
        t.push_back(bif("fig6a", "NG", "params.lambda", "0", "10"));
        t.push_back(bif("fig6b", "MS", "params.lambda", "0", "14"));
        t.push_back(bif("fig6c", "RS", "params.lambda", "0", "14"));
        // Mean-profit surfaces over (eta, lambda).
        auto surf = [](const char* name, const char* st) {
            return Preset{name, "surface",
                          S{{"structure", st},
                            {"sweep.transient", "2000"},
                            {"sweep.tail", "100"}}};
        };
        t.push_back(surf("fig7a", "NG"));
        t.push_back(surf("fig7b", "MS"));
        t.push_back(surf("fig7c", "RS"));
        // Gain sweeps of the two control laws on unstable systems.
        auto ctl = [](const char* name, const char* st, const char* g1, const char* scheme,
                      const char* hi) {
            return Preset{name, "control",
                          S{{"structure", st},
                            {"speeds.g1", g1},
                            {"control.scheme", scheme},
                            {"control.gain_lo", "0"},
                            {"control.gain_hi", hi},
                            {"control.gain_samples", "121"},
                            {"sweep.transient", "2000"},
                            {"sweep.tail", "200"},
                            {"sweep.record", "100"}}};
        };
        t.push_back(ctl("fig8a", "NG", "2.9", "parameter", "0.6"));
        t.push_back(ctl("fig8b", "NG", "2.9", "delayed", "0.6"));
        t.push_back(ctl("fig8c", "RS", "4", "parameter", "0.6"));
        t.push_back(ctl("fig8d", "RS", "4", "delayed", "0.8"));
        // Time series before/after parameter-adjustment control.
        auto sim = [](const char* name, const char* st, const char* g1, const char* gain) {
            S s{{"structure", st}, {"speeds.g1", g1}, {"sim.steps", "100"}};
            if (gain) {
                s.emplace_back("control.scheme", "parameter");
                s.emplace_back("control.gain", gain);
            }
            return Preset{name, "simulate", std::move(s)};
        };
        t.push_back(sim("fig9a", "NG", "2.9", nullptr));
        t.push_back(sim("fig9b", "NG", "2.9", "0.22"));
        t.push_back(sim("fig9c", "RS", "4", nullptr));
        t.push_back(sim("fig9d", "RS", "4", "0.32"));
        return t;
    }();
    return table;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw UnknownPreset("unknown preset '" + name + "'");
}

void validate_config(const RunConfig& c) {
    try {
        c.params.validate();
        c.speeds.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
    if (!all_finite(c.x0)) throw ConfigError("x0 must be finite");
    if (c.sim_steps < 1) throw ConfigError("sim.steps must be >= 1");
    if (c.transient < 0) throw ConfigError("sweep.transient must be >= 0");
    if (c.tail < 1) throw ConfigError("sweep.tail must be >= 1");
    if (c.record < 1) throw ConfigError("sweep.record must be >= 1");
    if (c.lle_steps < 1) throw ConfigError("lle.steps must be >= 1");
    if (c.attractor_tail < 2) throw ConfigError("attractor.tail must be >= 2");
    if (!(c.cluster_tol > 0)) throw ConfigError("attractor.tol must be > 0");
    if (c.basin_comp_x == c.basin_comp_y)
        throw ConfigError("basin.comp_x and basin.comp_y must differ");
    if (!(c.basin_x_lo < c.basin_x_hi)) throw ConfigError("basin x range must satisfy lo < hi");
    if (!(c.basin_y_lo < c.basin_y_hi)) throw ConfigError("basin y range must satisfy lo < hi");
    if (c.basin_nx < 2 || c.basin_ny < 2) throw ConfigError("basin grid must be at least 2x2");
    if (c.basin_max_iter < 1) throw ConfigError("basin.max_iter must be >= 1");
    if (!(c.basin_conv_tol > 0)) throw ConfigError("basin.conv_tol must be > 0");
    if (!(c.surface_eta_lo < c.surface_eta_hi))
        throw ConfigError("surface eta range must satisfy lo < hi");
    if (!(c.surface_lambda_lo < c.surface_lambda_hi))
        throw ConfigError("surface lambda range must satisfy lo < hi");
    if (c.surface_eta_samples < 2 || c.surface_lambda_samples < 2)
        throw ConfigError("surface grids need at least 2 samples per axis");
    if (c.control_scheme != "none") {
        if (!(c.control_gain >= 0)) throw ConfigError("control.gain must be >= 0");
        if (c.control_scheme == "parameter" && c.control_gain > 1.0)
            throw ConfigError("parameter-adjustment gain must lie in [0,1]");
    }
    if (!(c.control_gain_lo < c.control_gain_hi))
        throw ConfigError("control gain range must satisfy lo < hi");
    if (c.control_gain_samples < 2) throw ConfigError("control.gain_samples must be >= 2");
    if (!(c.control_gain_max > 0)) throw ConfigError("control.gain_max must be > 0");
    if (!(c.control_tol > 0)) throw ConfigError("control.tol must be > 0");
    if (!(c.escape_radius > 0)) throw ConfigError("escape_radius must be > 0");
    if (c.workers < 0) throw ConfigError("workers must be >= 0");
    // The axis must target a sweepable field.
    DynamicsSystem probe{c.structure, c.params, c.speeds};
    apply_axis(probe, c.axis.key, c.axis.lo);
    c.axis.validate();
}

}  // namespace chainscope
