// Batch front-end: every subcommand resolves one RunConfig, writes CSV (and
// optional PPM) outputs plus a manifest into --out, and prints a short summary.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chainscope/config.hpp"
#include "chainscope/errors.hpp"
#include "chainscope/run.hpp"
#include "chainscope/version.hpp"

namespace {

struct CliArgs {
    std::string preset;
    std::string config_file;
    std::vector<std::string> sets;
    std::string out_dir;
    int workers = -1;
    bool plot = false;
};

chainscope::RunConfig resolve(const std::string& command, const CliArgs& args) {
    using namespace chainscope;
    RunConfig cfg;  // compiled-in defaults
    if (!args.preset.empty()) {
        const Preset& p = find_preset(args.preset);
        if (p.command != command)
            throw ConfigError("preset '" + args.preset + "' belongs to the '" + p.command +
                              "' command");
        for (const auto& [key, value] : p.settings) apply_setting(cfg, key, value);
    }
    if (!args.config_file.empty()) cfg = load_config_file(args.config_file, cfg);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.workers >= 0) cfg.workers = args.workers;
    if (args.plot) cfg.plot = true;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    // handled before CLI11 so it works without the otherwise-required subcommand
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--list-presets") {
            for (const auto& p : chainscope::presets())
                std::printf("%-10s %s\n", p.command.c_str(), p.name.c_str());
            return 0;
        }

    CLI::App app{std::string(chainscope::kToolName) +
                 " - dual-channel supply chain pricing dynamics"};
    app.require_subcommand(1);
    app.fallthrough(true);

    CliArgs args;
    app.add_option("--preset", args.preset, "named scenario to start from (see --list-presets)");
    app.add_option("--config", args.config_file, "key = value file applied over the preset");
    app.add_option("--set", args.sets, "override a single key, e.g. --set params.mu=0.7")
        ->take_all();
    app.add_option("--out", args.out_dir, "output directory (default: out)");
    app.add_option("--workers", args.workers, "worker threads, 0 = auto");
    app.add_flag("--plot", args.plot, "also render PPM plots");
    app.set_version_flag("--version",
                         std::string(chainscope::kToolName) + " " + chainscope::kVersion);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print the preset table and exit");

    for (const auto& name : chainscope::kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        if (name == "equilibrium") sub->description("closed-form equilibria and comparative statics");
        else if (name == "simulate") sub->description("time series from a starting point");
        else if (name == "bifurcate") sub->description("long-run samples along a parameter axis");
        else if (name == "lyapunov") sub->description("largest Lyapunov exponent along an axis");
        else if (name == "attractor") sub->description("distinct long-run states of one orbit");
        else if (name == "basin") sub->description("classify a grid of starting points");
        else if (name == "surface") sub->description("long-run profits over an eta/lambda grid");
        else if (name == "control") sub->description("speed damping threshold and gain sweep");
        else sub->description("enumerate boundary and interior fixed points");
    }

    try {
        app.parse(argc, argv);
        const std::string command = app.get_subcommands().front()->get_name();
        const chainscope::RunConfig cfg = resolve(command, args);
        const chainscope::RunResult result = chainscope::run_command(command, cfg, args.preset);
        std::fputs(result.summary.c_str(), stdout);
        for (const auto& f : result.files_written)
            std::printf("wrote %s/%s\n", cfg.out_dir.c_str(), f.c_str());
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
