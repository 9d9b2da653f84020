#include "chainscope/analysis.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "chainscope/errors.hpp"

namespace chainscope {

int default_workers() {
    if (const char* env = std::getenv("CHAINSCOPE_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end && *end == '\0' && n >= 1 && n <= 4096) return static_cast<int>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int, int)>& fn) {
    if (n <= 0) return;
    if (workers <= 0) workers = default_workers();
    workers = std::min(workers, n);
    if (workers == 1) {
        fn(0, n);
        return;
    }
    const int chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

std::optional<int> detect_period(const std::vector<PriceState>& tail, double tol) {
    const int n = static_cast<int>(tail.size());
    for (int p = 1; p <= n / 2; ++p) {
        bool ok = true;
        for (int i = 0; i + p < n; ++i) {
            if (max_abs_diff(tail[i], tail[i + p]) >= tol) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

double AxisSpec::value_at(int i) const {
    if (samples <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
}

void AxisSpec::validate() const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw ConfigError("axis range must satisfy lo < hi");
    if (samples < 2) throw ConfigError("axis needs at least 2 samples");
}

void apply_axis(DynamicsSystem& sys, const std::string& key, double value) {
    if (key == "params.mu") sys.params.mu = value;
    else if (key == "params.eta") sys.params.eta = value;
    else if (key == "params.lambda") sys.params.lam = value;
    else if (key == "params.g") sys.params.g = value;
    else if (key == "params.g0") sys.params.g0 = value;
    else if (key == "params.ell") sys.params.ell = value;
    else if (key == "params.theta") sys.params.theta = value;
    else if (key == "speeds.g1") sys.speeds.g1 = value;
    else if (key == "speeds.g2") sys.speeds.g2 = value;
    else if (key == "speeds.g3") sys.speeds.g3 = value;
    else if (key == "speeds.g4") sys.speeds.g4 = value;
    else throw ConfigError("unknown sweep axis '" + key + "'");
}

namespace {

BifurcationColumn sweep_column(const DynamicsSystem& base, const std::string& key, double value,
                               const PriceState& x0, int transient, int tail, int record,
                               double escape_radius) {
    DynamicsSystem sys = base;
    apply_axis(sys, key, value);
    BifurcationColumn col;
    col.axis_value = value;
    const OrbitResult orbit = iterate(sys, x0, transient, tail, escape_radius);
    if (orbit.diverged) {
        col.diverged = true;
        return col;
    }
    col.period = detect_period(orbit.states).value_or(0);
    const int keep = std::min(record, static_cast<int>(orbit.states.size()));
    col.samples.assign(orbit.states.end() - keep, orbit.states.end());
    return col;
}

}  // namespace

BifurcationDiagram bifurcation_sweep(const DynamicsSystem& base, const AxisSpec& axis,
                                     const PriceState& x0, int transient, int tail, int record,
                                     int workers, double escape_radius) {
    axis.validate();
    BifurcationDiagram d;
    d.axis = axis;
    d.columns.resize(axis.samples);
    parallel_for(axis.samples, workers, [&](int begin, int end) {
        for (int i = begin; i < end; ++i)
            d.columns[i] = sweep_column(base, axis.key, axis.value_at(i), x0, transient, tail,
                                        record, escape_radius);
    });
    return d;
}

int effective_period(const BifurcationColumn& col) {
    if (col.diverged || col.period == 0) return INT_MAX;
    return col.period;
}

double first_bifurcation(const BifurcationDiagram& d, int period_above) {
    for (const auto& col : d.columns)
        if (effective_period(col) > period_above) return col.axis_value;
    throw NoBifurcation("no axis value exceeds period " + std::to_string(period_above));
}

LyapunovPoint largest_lyapunov(const DynamicsSystem& sys, const PriceState& x0, int transient,
                               int steps, double escape_radius) {
    LyapunovPoint out;
    out.lle = std::numeric_limits<double>::quiet_NaN();
    auto escaped = [&](const PriceState& s) {
        if (!all_finite(s)) return true;
        for (int i = 0; i < 4; ++i)
            if (std::abs(s[i]) > escape_radius) return true;
        return false;
    };
    PriceState x = x0;
    if (escaped(x)) {
        out.diverged = true;
        return out;
    }
    for (int t = 0; t < transient; ++t) {
        x = step_unchecked(sys, x);
        if (escaped(x)) {
            out.diverged = true;
            return out;
        }
    }
    Eigen::Vector4d v(0.5, 0.5, 0.5, 0.5);  // unit norm
    double sum = 0.0;
    for (int t = 0; t < steps; ++t) {
        v = jacobian(sys, x) * v;
        double nv = v.norm();
        if (!(nv > 1e-300)) {
            // Tangent vector annihilated; restart it and log the floor.
            nv = 1e-300;
            v = Eigen::Vector4d(0.5, 0.5, 0.5, 0.5) * nv;
        }
        sum += std::log(nv);
        v /= nv;
        x = step_unchecked(sys, x);
        if (escaped(x)) {
            out.diverged = true;
            return out;
        }
    }
    out.lle = sum / static_cast<double>(steps);
    return out;
}

std::vector<LyapunovPoint> lyapunov_sweep(const DynamicsSystem& base, const AxisSpec& axis,
                                          const PriceState& x0, int transient, int steps,
                                          int workers, double escape_radius) {
    axis.validate();
    std::vector<LyapunovPoint> pts(axis.samples);
    parallel_for(axis.samples, workers, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            DynamicsSystem sys = base;
            const double v = axis.value_at(i);
            apply_axis(sys, axis.key, v);
            LyapunovPoint pt = largest_lyapunov(sys, x0, transient, steps, escape_radius);
            pt.axis_value = v;
            pts[i] = pt;
        }
    });
    return pts;
}

AttractorSummary attractor_summary(const DynamicsSystem& sys, const PriceState& x0, int transient,
                                   int tail, double cluster_tol, double escape_radius) {
    AttractorSummary out;
    const OrbitResult orbit = iterate(sys, x0, transient, tail, escape_radius);
    out.diverged = orbit.diverged;
    if (orbit.diverged) return out;
    out.period = detect_period(orbit.states).value_or(0);
    for (const auto& s : orbit.states) {
        bool known = false;
        for (const auto& c : out.points) {
            if (max_abs_diff(s, c) < cluster_tol) {
                known = true;
                break;
            }
        }
        if (!known) out.points.push_back(s);
    }
    return out;
}

double BasinGrid::x_at(int ix) const {
    if (nx <= 1) return x_lo;
    return x_lo + (x_hi - x_lo) * static_cast<double>(ix) / static_cast<double>(nx - 1);
}

double BasinGrid::y_at(int iy) const {
    if (ny <= 1) return y_lo;
    return y_lo + (y_hi - y_lo) * static_cast<double>(iy) / static_cast<double>(ny - 1);
}

double BasinGrid::converged_fraction() const {
    if (cls.empty()) return 0.0;
    long n = 0;
    for (const auto c : cls)
        if (c == BasinClass::Converged) ++n;
    return static_cast<double>(n) / static_cast<double>(cls.size());
}

BasinGrid basin_scan(const DynamicsSystem& sys, const PriceState& base, int comp_x, int comp_y,
                     double x_lo, double x_hi, double y_lo, double y_hi, int nx, int ny,
                     int max_iter, double conv_tol, double escape_radius, int workers) {
    BasinGrid g;
    g.comp_x = comp_x;
    g.comp_y = comp_y;
    g.x_lo = x_lo;
    g.x_hi = x_hi;
    g.y_lo = y_lo;
    g.y_hi = y_hi;
    g.nx = nx;
    g.ny = ny;

    // Pre-pass: collect the attractors a cell can converge to. The interior
    // equilibrium is registered when locally stable; a probe orbit from `base`
    // contributes its limit cycle (period <= 8) when it settles onto one.
    constexpr double kRegistryTol = 1e-7;
    constexpr int kMaxPeriod = 8;
    try {
        const PriceState star = solve(sys.structure, sys.params);
        if (stability_at(sys, star).stable) {
            g.registry.emplace_back(star, 0);
            g.attractor_count = 1;
        }
    } catch (const DegenerateDenominator&) {
        // No interior closed form here; the probe orbit still applies.
    }
    {
        const int probe_transient = std::max(2000, max_iter);
        const int probe_tail = 4 * kMaxPeriod;
        const OrbitResult probe = iterate(sys, base, probe_transient, probe_tail, escape_radius);
        if (!probe.diverged) {
            const auto p = detect_period(probe.states, kRegistryTol);
            if (p && *p <= kMaxPeriod) {
                std::vector<PriceState> cycle(probe.states.end() - *p, probe.states.end());
                bool fresh = true;
                for (const auto& c : cycle)
                    for (const auto& [r, id] : g.registry)
                        if (max_abs_diff(c, r) < kRegistryTol) fresh = false;
                if (fresh) {
                    for (const auto& c : cycle) g.registry.emplace_back(c, g.attractor_count);
                    ++g.attractor_count;
                }
            }
        }
    }

    const int total = nx * ny;
    g.cls.assign(total, BasinClass::MaxIterExceeded);
    g.attractor_id.assign(total, -1);
    g.iterations.assign(total, max_iter);

    parallel_for(total, workers, [&](int begin, int end) {
        for (int cell = begin; cell < end; ++cell) {
            const int ix = cell % nx, iy = cell / nx;
            PriceState x = base;
            x[comp_x] = g.x_at(ix);
            x[comp_y] = g.y_at(iy);
            for (int t = 0; t <= max_iter; ++t) {
                bool esc = !all_finite(x);
                for (int i = 0; i < 4 && !esc; ++i)
                    if (std::abs(x[i]) > escape_radius) esc = true;
                if (esc) {
                    g.cls[cell] = BasinClass::Diverged;
                    g.iterations[cell] = t;
                    break;
                }
                int hit = -1;
                for (const auto& [r, id] : g.registry) {
                    if (max_abs_diff(x, r) <= conv_tol) {
                        hit = id;
                        break;
                    }
                }
                if (hit >= 0) {
                    g.cls[cell] = BasinClass::Converged;
                    g.attractor_id[cell] = hit;
                    g.iterations[cell] = t;
                    break;
                }
                if (t == max_iter) break;  // leaves MaxIterExceeded defaults
                x = step_unchecked(sys, x);
            }
        }
    });
    return g;
}

SurfaceGrid profit_surface(const DynamicsSystem& base, const AxisSpec& eta_axis,
                           const AxisSpec& lambda_axis, const PriceState& x0, int transient,
                           int tail, int workers, double escape_radius) {
    eta_axis.validate();
    lambda_axis.validate();
    SurfaceGrid g;
    g.eta_axis = eta_axis;
    g.lambda_axis = lambda_axis;
    const int ne = eta_axis.samples, nl = lambda_axis.samples;
    g.points.resize(static_cast<size_t>(ne) * nl);
    parallel_for(ne * nl, workers, [&](int begin, int end) {
        for (int cell = begin; cell < end; ++cell) {
            const int ei = cell % ne, li = cell / ne;
            DynamicsSystem sys = base;
            SurfacePoint pt;
            pt.eta = eta_axis.value_at(ei);
            pt.lambda = lambda_axis.value_at(li);
            sys.params.eta = pt.eta;
            sys.params.lam = pt.lambda;
            const OrbitResult orbit = iterate(sys, x0, transient, tail, escape_radius);
            if (orbit.diverged || orbit.states.empty()) {
                pt.diverged = true;
                const double nan = std::numeric_limits<double>::quiet_NaN();
                pt.profit = {nan, nan, nan, nan};
            } else {
                Profits acc;
                for (const auto& s : orbit.states) {
                    const Profits p = profits(s, sys.params);
                    acc.pi_r1 += p.pi_r1;
                    acc.pi_r2 += p.pi_r2;
                    acc.pi_m += p.pi_m;
                    acc.pi_sc += p.pi_sc;
                }
                const double n = static_cast<double>(orbit.states.size());
                pt.profit = {acc.pi_r1 / n, acc.pi_r2 / n, acc.pi_m / n, acc.pi_sc / n};
            }
            g.points[cell] = pt;
        }
    });
    return g;
}

}  // namespace chainscope
