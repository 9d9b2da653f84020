#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainscope/analysis.hpp"
#include "chainscope/model.hpp"

namespace chainscope {

struct Rgb {
    uint8_t r = 0, g = 0, b = 0;
};

// Component colors, state order: k1 blue, k2 red, w1 green, w2 purple.
extern const std::array<Rgb, 4> kComponentColors;

struct Image {
    int width = 0, height = 0;
    std::vector<uint8_t> rgb;  // 3 bytes per pixel, row-major from the top

    Image() = default;
    Image(int w, int h, Rgb fill);
    void set(int x, int y, Rgb c);  // ignores out-of-bounds
};

// Binary PPM (P6). Throws IoError.
void write_ppm(const std::string& path, const Image& img);

// Scatter of recorded samples vs axis value, one color per component.
Image plot_bifurcation(const BifurcationDiagram& d, int width = 900, int height = 600);

// LLE curve with a zero line.
Image plot_lyapunov(const std::vector<LyapunovPoint>& pts, int width = 900, int height = 600);

// Time series of the four components.
Image plot_timeseries(const std::vector<PriceState>& orbit, int width = 900, int height = 600);

// Basin color map: one pixel per cell (converged cells colored by attractor).
Image plot_basin(const BasinGrid& g);

// Attractor scatter projected on two components.
Image plot_attractor(const AttractorSummary& a, int cx, int cy, int width = 600, int height = 600);

// Heat maps of mean profits (pi_r1, pi_r2, pi_m side by side).
Image plot_surface(const SurfaceGrid& g);

}  // namespace chainscope
