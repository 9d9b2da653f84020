#pragma once

#include <string>
#include <vector>

#include "chainscope/analysis.hpp"
#include "chainscope/control.hpp"
#include "chainscope/dynamics.hpp"
#include "chainscope/equilibrium.hpp"

namespace chainscope {

// Data CSVs use 12 significant digits; NaN/Inf are spelled literally.
std::string fmt12(double v);
// Manifests and config echoes use 17 significant digits (exact round-trip).
std::string fmt17(double v);

void write_text_file(const std::string& path, const std::string& content);  // throws IoError
std::string read_text_file(const std::string& path);                        // throws IoError

// structure,k1,k2,w1,w2,pi_r1,pi_r2,pi_m,pi_sc
std::string equilibrium_csv(const std::vector<EquilibriumReport>& reports);

// structure,component,wrt,partial,sign
std::string statics_csv(const std::vector<ComparativeStatics>& statics);

// t,k1,k2,w1,w2,pi_r1,pi_r2,pi_m — one row per recorded step, t starting at 0.
std::string timeseries_csv(const std::vector<PriceState>& orbit, const ModelParams& p);

// axis_value,component,sample_index,value,period,diverged
// Diverged columns emit one row per component with value NaN, period 0.
std::string bifurcation_csv(const BifurcationDiagram& d);

// axis_value,lle,diverged
std::string lyapunov_csv(const std::vector<LyapunovPoint>& pts);

// point_index,k1,k2,w1,w2,period,lle,diverged (summary columns repeat per row)
std::string attractor_csv(const AttractorSummary& a, const LyapunovPoint& lle);

// x,y,class,attractor_id,iterations — class one of converged/diverged/maxiter.
std::string basin_csv(const BasinGrid& g);

// attractor_id,point_index,k1,k2,w1,w2 — the basin registry.
std::string basin_attractors_csv(const BasinGrid& g);

// eta,lambda,pi_r1,pi_r2,pi_m,diverged
std::string surface_csv(const SurfaceGrid& g);

// pattern,k1,k2,w1,w2,spectral_radius,stable,residual — pattern is four 0/1
// chars in component order, 1 = component active (not pinned to zero).
std::string fixed_points_csv(const FixedPointScan& scan);

// scheme,uncontrolled_radius,min_gain,controlled_radius
std::string control_csv(ControlScheme scheme, double uncontrolled_radius,
                        const ControlThreshold& threshold);

// gain,component,sample_index,value,period,diverged — bifurcation over the
// control gain at fixed system parameters.
std::string control_sweep_csv(const BifurcationDiagram& d);

}  // namespace chainscope
