#include "chainscope/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "chainscope/csv.hpp"
#include "chainscope/errors.hpp"
#include "chainscope/plot.hpp"
#include "chainscope/version.hpp"

namespace chainscope {

const std::vector<std::string> kCommands = {
    "equilibrium", "simulate", "bifurcate", "lyapunov", "attractor",
    "basin",       "surface",  "control",   "fixed-points",
};

bool is_command(const std::string& name) {
    return std::find(kCommands.begin(), kCommands.end(), name) != kCommands.end();
}

std::string manifest_text(const std::string& command, const RunConfig& cfg,
                          const std::string& preset_name,
                          const std::vector<std::string>& files_written) {
    std::string out;
    out += std::string("tool = ") + kToolName + " " + kVersion + "\n";
    out += "command = " + command + "\n";
    out += "preset = " + (preset_name.empty() ? "none" : preset_name) + "\n";
    out += "# resolved configuration\n";
    out += render_config(cfg);
    out += "# outputs\n";
    for (const auto& f : files_written) out += "output = " + f + "\n";
    return out;
}

namespace {

struct Sink {
    std::filesystem::path dir;
    std::vector<std::string> files;

    void put(const std::string& name, const std::string& content) {
        write_text_file((dir / name).string(), content);
        files.push_back(name);
    }
    void put_ppm(const std::string& name, const Image& img) {
        write_ppm((dir / name).string(), img);
        files.push_back(name);
    }
};

int workers_of(const RunConfig& cfg) {
    return cfg.workers > 0 ? cfg.workers : default_workers();
}

DynamicsSystem system_of(const RunConfig& cfg) {
    return {cfg.structure, cfg.params, cfg.speeds};
}

std::string run_equilibrium(const RunConfig& cfg, Sink& sink) {
    std::vector<EquilibriumReport> reports;
    std::vector<ComparativeStatics> statics;
    for (const auto s : {PowerStructure::NG, PowerStructure::MS, PowerStructure::RS}) {
        reports.push_back(equilibrium_report(s, cfg.params));
        statics.push_back(comparative_statics(s, cfg.params));
    }
    sink.put("equilibrium.csv", equilibrium_csv(reports));
    sink.put("statics.csv", statics_csv(statics));
    std::ostringstream ss;
    for (const auto& r : reports) {
        ss << to_string(r.structure) << ": k=(" << fmt12(r.state.k1) << ", " << fmt12(r.state.k2)
           << ") w=(" << fmt12(r.state.w1) << ", " << fmt12(r.state.w2)
           << ") pi_sc=" << fmt12(r.profit.pi_sc) << "\n";
    }
    return ss.str();
}

std::string run_simulate(const RunConfig& cfg, Sink& sink) {
    DynamicsSystem sys = system_of(cfg);
    if (cfg.control_scheme != "none")
        sys.speeds = controlled_speeds(scheme_from_string(cfg.control_scheme), sys.speeds,
                                       cfg.control_gain);
    const OrbitResult orbit = iterate(sys, cfg.x0, 0, cfg.sim_steps + 1, cfg.escape_radius);
    sink.put("timeseries.csv", timeseries_csv(orbit.states, cfg.params));
    if (cfg.plot) sink.put_ppm("timeseries.ppm", plot_timeseries(orbit.states));
    std::ostringstream ss;
    if (orbit.diverged)
        ss << "orbit diverged after " << orbit.steps_taken << " steps\n";
    else if (!orbit.states.empty()) {
        const PriceState& last = orbit.states.back();
        ss << "final state after " << cfg.sim_steps << " steps: (" << fmt12(last.k1) << ", "
           << fmt12(last.k2) << ", " << fmt12(last.w1) << ", " << fmt12(last.w2) << ")\n";
    }
    return ss.str();
}

std::string run_bifurcate(const RunConfig& cfg, Sink& sink) {
    const BifurcationDiagram d =
        bifurcation_sweep(system_of(cfg), cfg.axis, cfg.x0, cfg.transient, cfg.tail, cfg.record,
                          workers_of(cfg), cfg.escape_radius);
    sink.put("bifurcation.csv", bifurcation_csv(d));
    if (cfg.plot) sink.put_ppm("bifurcation.ppm", plot_bifurcation(d));
    std::ostringstream ss;
    ss << "swept " << cfg.axis.key << " over [" << fmt12(cfg.axis.lo) << ", " << fmt12(cfg.axis.hi)
       << "] at " << cfg.axis.samples << " points\n";
    try {
        ss << "first sample beyond period 1 at " << cfg.axis.key << " = "
           << fmt12(first_bifurcation(d)) << "\n";
    } catch (const NoBifurcation&) {
        ss << "period 1 throughout the range\n";
    }
    return ss.str();
}

std::string run_lyapunov(const RunConfig& cfg, Sink& sink) {
    const auto pts = lyapunov_sweep(system_of(cfg), cfg.axis, cfg.x0, cfg.transient, cfg.lle_steps,
                                    workers_of(cfg), cfg.escape_radius);
    sink.put("lle.csv", lyapunov_csv(pts));
    if (cfg.plot) sink.put_ppm("lle.ppm", plot_lyapunov(pts));
    int positive = 0, diverged = 0;
    double peak = -1e300;
    for (const auto& p : pts) {
        if (p.diverged) {
            ++diverged;
            continue;
        }
        if (p.lle > 0) ++positive;
        peak = std::max(peak, p.lle);
    }
    std::ostringstream ss;
    ss << positive << "/" << pts.size() << " sampled points have a positive exponent, " << diverged
       << " diverged";
    if (peak > -1e300) ss << "; max " << fmt12(peak);
    ss << "\n";
    return ss.str();
}

std::string run_attractor(const RunConfig& cfg, Sink& sink) {
    const DynamicsSystem sys = system_of(cfg);
    const AttractorSummary a = attractor_summary(sys, cfg.x0, cfg.transient, cfg.attractor_tail,
                                                 cfg.cluster_tol, cfg.escape_radius);
    LyapunovPoint lle;
    lle.lle = std::numeric_limits<double>::quiet_NaN();
    lle.diverged = a.diverged;
    if (!a.diverged)
        lle = largest_lyapunov(sys, cfg.x0, cfg.transient, cfg.lle_steps, cfg.escape_radius);
    sink.put("attractor.csv", attractor_csv(a, lle));
    if (cfg.plot) sink.put_ppm("attractor.ppm", plot_attractor(a, 0, 1));
    std::ostringstream ss;
    if (a.diverged)
        ss << "orbit diverged\n";
    else {
        ss << a.points.size() << " distinct points, ";
        if (a.period > 0)
            ss << "period " << a.period;
        else
            ss << "aperiodic within the sampled tail";
        ss << ", lle = " << fmt12(lle.lle) << "\n";
    }
    return ss.str();
}

std::string run_basin(const RunConfig& cfg, Sink& sink) {
    const BasinGrid g = basin_scan(system_of(cfg), cfg.x0, cfg.basin_comp_x, cfg.basin_comp_y,
                                   cfg.basin_x_lo, cfg.basin_x_hi, cfg.basin_y_lo, cfg.basin_y_hi,
                                   cfg.basin_nx, cfg.basin_ny, cfg.basin_max_iter,
                                   cfg.basin_conv_tol, cfg.escape_radius, workers_of(cfg));
    sink.put("basin.csv", basin_csv(g));
    sink.put("basin_attractors.csv", basin_attractors_csv(g));
    if (cfg.plot) sink.put_ppm("basin.ppm", plot_basin(g));
    long conv = 0, div = 0, maxit = 0;
    for (const auto c : g.cls) {
        if (c == BasinClass::Converged) ++conv;
        else if (c == BasinClass::Diverged) ++div;
        else ++maxit;
    }
    std::ostringstream ss;
    ss << "grid " << g.nx << "x" << g.ny << ": " << conv << " converged, " << div << " diverged, "
       << maxit << " hit the iteration cap; " << g.attractor_count
       << " attractor(s) registered; converged fraction " << fmt12(g.converged_fraction()) << "\n";
    return ss.str();
}

std::string run_surface(const RunConfig& cfg, Sink& sink) {
    const AxisSpec eta_axis{"params.eta", cfg.surface_eta_lo, cfg.surface_eta_hi,
                            cfg.surface_eta_samples};
    const AxisSpec lambda_axis{"params.lambda", cfg.surface_lambda_lo, cfg.surface_lambda_hi,
                               cfg.surface_lambda_samples};
    const SurfaceGrid g = profit_surface(system_of(cfg), eta_axis, lambda_axis, cfg.x0,
                                         cfg.transient, cfg.tail, workers_of(cfg),
                                         cfg.escape_radius);
    sink.put("surface.csv", surface_csv(g));
    if (cfg.plot) sink.put_ppm("surface.ppm", plot_surface(g));
    long div = 0;
    for (const auto& pt : g.points)
        if (pt.diverged) ++div;
    std::ostringstream ss;
    ss << g.points.size() << " cells, " << div << " diverged\n";
    return ss.str();
}

std::string run_control(const RunConfig& cfg, Sink& sink) {
    if (cfg.control_scheme == "none")
        throw ConfigError("the control command needs control.scheme = parameter or delayed");
    const ControlScheme scheme = scheme_from_string(cfg.control_scheme);
    const DynamicsSystem sys = system_of(cfg);
    const PriceState star = solve(sys.structure, sys.params);
    const double r0 = stability_at(sys, star).spectral_radius;
    const ControlThreshold th =
        min_stabilizing_gain(scheme, sys, cfg.control_gain_max, cfg.control_tol);
    sink.put("control.csv", control_csv(scheme, r0, th));

    // Bifurcation-style sweep over the control gain at fixed parameters.
    BifurcationDiagram d;
    d.axis = AxisSpec{"control.gain", cfg.control_gain_lo, cfg.control_gain_hi,
                      cfg.control_gain_samples};
    d.columns.resize(d.axis.samples);
    parallel_for(d.axis.samples, workers_of(cfg), [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double gain = d.axis.value_at(i);
            DynamicsSystem damped = sys;
            damped.speeds = controlled_speeds(scheme, sys.speeds, gain);
            BifurcationColumn col;
            col.axis_value = gain;
            const OrbitResult orbit =
                iterate(damped, cfg.x0, cfg.transient, cfg.tail, cfg.escape_radius);
            if (orbit.diverged) {
                col.diverged = true;
            } else {
                col.period = detect_period(orbit.states).value_or(0);
                const int keep = std::min(cfg.record, static_cast<int>(orbit.states.size()));
                col.samples.assign(orbit.states.end() - keep, orbit.states.end());
            }
            d.columns[i] = col;
        }
    });
    sink.put("control_sweep.csv", control_sweep_csv(d));
    if (cfg.plot) sink.put_ppm("control_sweep.ppm", plot_bifurcation(d));

    std::ostringstream ss;
    ss << to_string(scheme) << " control: uncontrolled spectral radius " << fmt12(r0)
       << ", minimal stabilizing gain " << fmt12(th.gain) << " (radius "
       << fmt12(th.spectral_radius) << ")\n";
    return ss.str();
}

std::string run_fixed_points(const RunConfig& cfg, Sink& sink) {
    const FixedPointScan scan = fixed_points(system_of(cfg));
    sink.put("fixed_points.csv", fixed_points_csv(scan));
    int stable = 0;
    for (const auto& fp : scan.points)
        if (fp.stability.stable) ++stable;
    std::ostringstream ss;
    ss << scan.points.size() << " fixed points (" << stable << " stable, "
       << scan.skipped_patterns.size() << " singular pattern(s) skipped)\n";
    for (const auto& pat : scan.skipped_patterns) {
        ss << "skipped pattern ";
        for (int i = 0; i < 4; ++i) ss << (pat[i] ? '1' : '0');
        ss << "\n";
    }
    return ss.str();
}

}  // namespace

RunResult run_command(const std::string& command, const RunConfig& cfg,
                      const std::string& preset_name) {
    if (!is_command(command)) throw ConfigError("unknown command '" + command + "'");
    validate_config(cfg);

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");

    Sink sink;
    sink.dir = cfg.out_dir;
    std::string summary;
    if (command == "equilibrium") summary = run_equilibrium(cfg, sink);
    else if (command == "simulate") summary = run_simulate(cfg, sink);
    else if (command == "bifurcate") summary = run_bifurcate(cfg, sink);
    else if (command == "lyapunov") summary = run_lyapunov(cfg, sink);
    else if (command == "attractor") summary = run_attractor(cfg, sink);
    else if (command == "basin") summary = run_basin(cfg, sink);
    else if (command == "surface") summary = run_surface(cfg, sink);
    else if (command == "control") summary = run_control(cfg, sink);
    else summary = run_fixed_points(cfg, sink);

    write_text_file((sink.dir / "manifest.txt").string(),
                    manifest_text(command, cfg, preset_name, sink.files));
    sink.files.push_back("manifest.txt");
    return {sink.files, summary};
}

}  // namespace chainscope
