#pragma once

#include <string>
#include <vector>

#include "chainscope/analysis.hpp"
#include "chainscope/control.hpp"
#include "chainscope/dynamics.hpp"

namespace chainscope {

// Fully resolved experiment configuration. Every field has a default; the CLI
// layers preset, config file and --set overrides on top, in that order.
struct RunConfig {
    PowerStructure structure = PowerStructure::NG;
    ModelParams params;
    Speeds speeds;
    PriceState x0{0.1, 0.1, 0.31, 0.4};

    // simulate
    int sim_steps = 100;

    // bifurcate / lyapunov sweeps
    AxisSpec axis{"params.lambda", 0.0, 10.0, 200};
    int transient = 400;
    int tail = 100;
    int record = 100;   // tail states written per axis value (capped at tail)
    int lle_steps = 5000;

    // attractor
    int attractor_tail = 512;
    double cluster_tol = 1e-4;

    // basin
    int basin_comp_x = 0;  // k1
    int basin_comp_y = 1;  // k2
    double basin_x_lo = 0.0, basin_x_hi = 1.0;
    double basin_y_lo = 0.0, basin_y_hi = 1.0;
    int basin_nx = 300, basin_ny = 300;
    int basin_max_iter = 2000;
    double basin_conv_tol = 1e-6;

    // surface
    double surface_eta_lo = 1.0, surface_eta_hi = 14.0;
    int surface_eta_samples = 60;
    double surface_lambda_lo = 0.0, surface_lambda_hi = 14.0;
    int surface_lambda_samples = 60;

    // control: scheme "none" leaves simulate uncontrolled; the control command
    // requires a concrete scheme.
    std::string control_scheme = "none";  // none | parameter | delayed
    double control_gain = 0.0;            // gain for controlled simulate runs
    double control_gain_lo = 0.0, control_gain_hi = 0.6;
    int control_gain_samples = 121;
    double control_gain_max = 64.0;  // bisection upper bound
    double control_tol = 1e-3;       // bisection tolerance

    double escape_radius = 1e6;
    int workers = 0;  // 0 = CHAINSCOPE_WORKERS env / hardware default
    bool plot = false;
    std::string out_dir = "out";

    bool operator==(const RunConfig& o) const;
    bool operator!=(const RunConfig& o) const { return !(*this == o); }
};

// Known dotted keys, in serialization order (for manifests and round-trip).
std::vector<std::string> config_keys();

// Set one dotted key from its string value. Throws ConfigError for unknown
// keys or unparseable values.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);

// Read one dotted key back as a string (%.17g for doubles, round-trip exact).
std::string get_setting(const RunConfig& c, const std::string& key);

// Render the full config as `key = value` lines, one per key.
std::string render_config(const RunConfig& c);

// Parse `key = value` lines ('#' comments and blank lines ignored) on top of
// `base`. Throws ConfigError on malformed lines.
RunConfig parse_config(const std::string& text, RunConfig base);

// Load a config file on top of `base`. Throws IoError when unreadable.
RunConfig load_config_file(const std::string& path, RunConfig base);

// Canned experiment setups. Each preset pins the command it reproduces.
struct Preset {
    std::string name;
    std::string command;
    std::vector<std::pair<std::string, std::string>> settings;  // key, value
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);  // throws UnknownPreset

// Command-independent validation of a resolved config (parameter domains,
// axis sanity). Throws InvalidParams/ConfigError.
void validate_config(const RunConfig& c);

}  // namespace chainscope
