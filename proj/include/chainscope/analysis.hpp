#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainscope/dynamics.hpp"

namespace chainscope {

// Number of workers to use when none is requested explicitly:
// CHAINSCOPE_WORKERS env var if set and valid, else hardware concurrency, else 1.
int default_workers();

// Run fn over [0, n) split into contiguous blocks, one per worker. The
// partition depends only on n and the worker count, and workers write to
// disjoint ranges, so results are byte-identical for any worker count.
void parallel_for(int n, int workers, const std::function<void(int begin, int end)>& fn);

// Smallest p <= tail.size()/2 such that every state in the tail matches the
// state p steps earlier to within tol (sup norm). nullopt when none qualifies.
std::optional<int> detect_period(const std::vector<PriceState>& tail, double tol = 1e-4);

// A swept parameter axis: `key` is a dotted name ("params.lambda", "speeds.g1", ...).
struct AxisSpec {
    std::string key = "params.lambda";
    double lo = 0.0;
    double hi = 1.0;
    int samples = 100;

    double value_at(int i) const;  // linear, endpoint-inclusive
    void validate() const;         // throws ConfigError
};

// Set the swept field on the system in place. Throws ConfigError for an
// unknown key.
void apply_axis(DynamicsSystem& sys, const std::string& key, double value);

struct BifurcationColumn {
    double axis_value = 0.0;
    std::vector<PriceState> samples;  // recorded post-transient states
    int period = 0;                   // detected period, 0 = none within tol
    bool diverged = false;
};

struct BifurcationDiagram {
    AxisSpec axis;
    std::vector<BifurcationColumn> columns;
};

// For each axis sample: iterate `transient` + `tail` steps, detect the period
// over the full tail, and keep the last `record` tail states as samples.
BifurcationDiagram bifurcation_sweep(const DynamicsSystem& base, const AxisSpec& axis,
                                     const PriceState& x0, int transient, int tail, int record,
                                     int workers, double escape_radius = 1e6);

// Effective period for threshold scans: the detected period, or INT_MAX for
// aperiodic or diverged columns.
int effective_period(const BifurcationColumn& col);

// Smallest axis value whose effective period exceeds `period_above`.
// Throws NoBifurcation when the whole sweep stays at or below it.
double first_bifurcation(const BifurcationDiagram& d, int period_above = 1);

struct LyapunovPoint {
    double axis_value = 0.0;
    double lle = 0.0;
    bool diverged = false;
};

// Largest Lyapunov exponent via tangent-vector renormalization against the
// exact Jacobian. Returns {lle, diverged}; a diverged orbit reports NaN.
LyapunovPoint largest_lyapunov(const DynamicsSystem& sys, const PriceState& x0, int transient,
                               int steps, double escape_radius = 1e6);

std::vector<LyapunovPoint> lyapunov_sweep(const DynamicsSystem& base, const AxisSpec& axis,
                                          const PriceState& x0, int transient, int steps,
                                          int workers, double escape_radius = 1e6);

// Distinct states visited on the post-transient orbit (greedy clustering,
// sup-norm tolerance). `period` mirrors detect_period over the tail.
struct AttractorSummary {
    std::vector<PriceState> points;
    int period = 0;  // 0 = aperiodic within the tail
    bool diverged = false;
};

AttractorSummary attractor_summary(const DynamicsSystem& sys, const PriceState& x0, int transient,
                                   int tail, double cluster_tol = 1e-4,
                                   double escape_radius = 1e6);

enum class BasinClass { Converged, Diverged, MaxIterExceeded };

struct BasinGrid {
    int comp_x = 0, comp_y = 1;  // indices into PriceState components
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    int nx = 0, ny = 0;
    // Row-major, index = iy * nx + ix. Cell (ix,iy) starts from `base` with
    // components comp_x/comp_y replaced by the grid coordinates.
    std::vector<BasinClass> cls;
    std::vector<int> attractor_id;  // -1 unless Converged
    std::vector<int> iterations;
    // Registry of attractor representatives found in the pre-pass:
    // each entry is (state, id); all points of one cycle share an id.
    std::vector<std::pair<PriceState, int>> registry;
    int attractor_count = 0;

    double x_at(int ix) const;
    double y_at(int iy) const;
    double converged_fraction() const;
};

// Pre-pass: register the interior equilibrium when it is locally stable, plus
// the cycle (period <= max_period, tolerance 1e-7) reached from `base` after a
// long transient. Per cell: iterate up to max_iter; classify Diverged on
// escape, Converged when within conv_tol of a registry state, else
// MaxIterExceeded.
BasinGrid basin_scan(const DynamicsSystem& sys, const PriceState& base, int comp_x, int comp_y,
                     double x_lo, double x_hi, double y_lo, double y_hi, int nx, int ny,
                     int max_iter, double conv_tol, double escape_radius, int workers);

struct SurfacePoint {
    double eta = 0.0;
    double lambda = 0.0;
    Profits profit;  // tail means; NaN when diverged
    bool diverged = false;
};

struct SurfaceGrid {
    AxisSpec eta_axis;                 // key fixed to "params.eta"
    AxisSpec lambda_axis;              // key fixed to "params.lambda"
    std::vector<SurfacePoint> points;  // row-major, lambda outer, eta inner
};

// Long-run average profits over the post-transient tail on an (eta, lambda) grid.
SurfaceGrid profit_surface(const DynamicsSystem& base, const AxisSpec& eta_axis,
                           const AxisSpec& lambda_axis, const PriceState& x0, int transient,
                           int tail, int workers, double escape_radius = 1e6);

}  // namespace chainscope
