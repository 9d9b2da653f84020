#include "chainscope/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chainscope/errors.hpp"

namespace chainscope {

namespace {

std::string fmt(double v, const char* spec) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string fmt12(double v) { return fmt(v, "%.12g"); }
std::string fmt17(double v) { return fmt(v, "%.17g"); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string equilibrium_csv(const std::vector<EquilibriumReport>& reports) {
    std::string out = "structure,k1,k2,w1,w2,pi_r1,pi_r2,pi_m,pi_sc\n";
    for (const auto& r : reports) {
        out += to_string(r.structure);
        for (int i = 0; i < 4; ++i) out += "," + fmt12(r.state[i]);
        out += "," + fmt12(r.profit.pi_r1) + "," + fmt12(r.profit.pi_r2) + "," +
               fmt12(r.profit.pi_m) + "," + fmt12(r.profit.pi_sc) + "\n";
    }
    return out;
}

std::string statics_csv(const std::vector<ComparativeStatics>& statics) {
    std::string out = "structure,component,wrt,partial,sign\n";
    for (const auto& cs : statics) {
        for (int comp = 0; comp < 4; ++comp) {
            for (int wrt = 0; wrt < 3; ++wrt) {
                out += std::string(to_string(cs.structure)) + "," + kComponentNames[comp] + "," +
                       kStaticsWrtNames[wrt] + "," + fmt12(cs.partial[comp][wrt]) + "," +
                       sign_char(cs.sign[comp][wrt]) + "\n";
            }
        }
    }
    return out;
}

std::string timeseries_csv(const std::vector<PriceState>& orbit, const ModelParams& p) {
    std::string out = "t,k1,k2,w1,w2,pi_r1,pi_r2,pi_m\n";
    for (size_t t = 0; t < orbit.size(); ++t) {
        const Profits pi = profits(orbit[t], p);
        out += std::to_string(t);
        for (int i = 0; i < 4; ++i) out += "," + fmt12(orbit[t][i]);
        out += "," + fmt12(pi.pi_r1) + "," + fmt12(pi.pi_r2) + "," + fmt12(pi.pi_m) + "\n";
    }
    return out;
}

namespace {

std::string sweep_csv(const BifurcationDiagram& d, const char* axis_name) {
    std::string out = std::string(axis_name) + ",component,sample_index,value,period,diverged\n";
    for (const auto& col : d.columns) {
        const std::string axis = fmt12(col.axis_value);
        if (col.diverged) {
            for (int c = 0; c < 4; ++c)
                out += axis + "," + kComponentNames[c] + ",0,NaN,0,1\n";
            continue;
        }
        const std::string period = std::to_string(col.period);
        for (int c = 0; c < 4; ++c) {
            for (size_t si = 0; si < col.samples.size(); ++si) {
                out += axis + "," + kComponentNames[c] + "," + std::to_string(si) + "," +
                       fmt12(col.samples[si][c]) + "," + period + ",0\n";
            }
        }
    }
    return out;
}

}  // namespace

std::string bifurcation_csv(const BifurcationDiagram& d) { return sweep_csv(d, "axis_value"); }

std::string lyapunov_csv(const std::vector<LyapunovPoint>& pts) {
    std::string out = "axis_value,lle,diverged\n";
    for (const auto& p : pts)
        out += fmt12(p.axis_value) + "," + fmt12(p.lle) + "," + (p.diverged ? "1" : "0") + "\n";
    return out;
}

std::string attractor_csv(const AttractorSummary& a, const LyapunovPoint& lle) {
    std::string out = "point_index,k1,k2,w1,w2,period,lle,diverged\n";
    const std::string period = std::to_string(a.period);
    const std::string lle_s = fmt12(lle.lle);
    const std::string div = a.diverged ? "1" : "0";
    if (a.points.empty()) {
        out += "0,NaN,NaN,NaN,NaN,0," + lle_s + "," + div + "\n";
        return out;
    }
    for (size_t i = 0; i < a.points.size(); ++i) {
        out += std::to_string(i);
        for (int c = 0; c < 4; ++c) out += "," + fmt12(a.points[i][c]);
        out += "," + period + "," + lle_s + "," + div + "\n";
    }
    return out;
}

std::string basin_csv(const BasinGrid& g) {
    std::string out = "x,y,class,attractor_id,iterations\n";
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const int cell = iy * g.nx + ix;
            const char* cls = g.cls[cell] == BasinClass::Converged ? "converged"
                              : g.cls[cell] == BasinClass::Diverged ? "diverged"
                                                                    : "maxiter";
            out += fmt12(g.x_at(ix)) + "," + fmt12(g.y_at(iy)) + "," + cls + "," +
                   std::to_string(g.attractor_id[cell]) + "," +
                   std::to_string(g.iterations[cell]) + "\n";
        }
    }
    return out;
}

std::string basin_attractors_csv(const BasinGrid& g) {
    std::string out = "attractor_id,point_index,k1,k2,w1,w2\n";
    int last_id = -1, idx = 0;
    for (const auto& [state, id] : g.registry) {
        idx = (id == last_id) ? idx + 1 : 0;
        last_id = id;
        out += std::to_string(id) + "," + std::to_string(idx);
        for (int c = 0; c < 4; ++c) out += "," + fmt12(state[c]);
        out += "\n";
    }
    return out;
}

std::string surface_csv(const SurfaceGrid& g) {
    std::string out = "eta,lambda,pi_r1,pi_r2,pi_m,diverged\n";
    for (const auto& pt : g.points) {
        out += fmt12(pt.eta) + "," + fmt12(pt.lambda) + "," + fmt12(pt.profit.pi_r1) + "," +
               fmt12(pt.profit.pi_r2) + "," + fmt12(pt.profit.pi_m) + "," +
               (pt.diverged ? "1" : "0") + "\n";
    }
    return out;
}

std::string fixed_points_csv(const FixedPointScan& scan) {
    std::string out = "pattern,k1,k2,w1,w2,spectral_radius,stable,residual\n";
    for (const auto& fp : scan.points) {
        std::string pattern;
        for (int i = 0; i < 4; ++i) pattern += fp.active[i] ? '1' : '0';
        out += pattern;
        for (int c = 0; c < 4; ++c) out += "," + fmt12(fp.state[c]);
        out += "," + fmt12(fp.stability.spectral_radius) + "," +
               (fp.stability.stable ? "1" : "0") + "," + fmt12(fp.residual) + "\n";
    }
    return out;
}

std::string control_csv(ControlScheme scheme, double uncontrolled_radius,
                        const ControlThreshold& threshold) {
    std::string out = "scheme,uncontrolled_radius,min_gain,controlled_radius\n";
    out += std::string(to_string(scheme)) + "," + fmt12(uncontrolled_radius) + "," +
           fmt12(threshold.gain) + "," + fmt12(threshold.spectral_radius) + "\n";
    return out;
}

std::string control_sweep_csv(const BifurcationDiagram& d) { return sweep_csv(d, "gain"); }

}  // namespace chainscope
