#include "chainscope/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chainscope/errors.hpp"

namespace chainscope {

const std::array<Rgb, 4> kComponentColors = {
    Rgb{40, 70, 220},    // k1 blue
    Rgb{220, 40, 40},    // k2 red
    Rgb{30, 160, 60},    // w1 green
    Rgb{150, 40, 190},   // w2 purple
};

Image::Image(int w, int h, Rgb fill) : width(w), height(h), rgb(3u * w * h) {
    for (int i = 0; i < w * h; ++i) {
        rgb[3 * i] = fill.r;
        rgb[3 * i + 1] = fill.g;
        rgb[3 * i + 2] = fill.b;
    }
}

void Image::set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    const size_t i = 3u * (static_cast<size_t>(y) * width + x);
    rgb[i] = c.r;
    rgb[i + 1] = c.g;
    rgb[i + 2] = c.b;
}

void write_ppm(const std::string& path, const Image& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << "P6\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
    if (!f) throw IoError("write failed for '" + path + "'");
}

namespace {

constexpr int kMarginL = 50, kMarginR = 12, kMarginT = 12, kMarginB = 36;
const Rgb kWhite{255, 255, 255};
const Rgb kAxis{90, 90, 90};
const Rgb kGridline{210, 210, 210};

struct Frame {
    int w, h;
    double xlo, xhi, ylo, yhi;

    int px(double x) const {
        const int span = w - kMarginL - kMarginR - 1;
        return kMarginL + static_cast<int>(std::lround((x - xlo) / (xhi - xlo) * span));
    }
    int py(double y) const {
        const int span = h - kMarginT - kMarginB - 1;
        return h - kMarginB - 1 - static_cast<int>(std::lround((y - ylo) / (yhi - ylo) * span));
    }
};

void draw_axes(Image& img, const Frame& f) {
    for (int x = kMarginL; x < f.w - kMarginR; ++x) img.set(x, f.h - kMarginB - 1, kAxis);
    for (int y = kMarginT; y < f.h - kMarginB; ++y) img.set(kMarginL, y, kAxis);
}

void pad_range(double& lo, double& hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
}

void draw_line(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        img.set(x0, y0, c);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

Rgb heat_color(double u) {
    u = std::clamp(u, 0.0, 1.0);
    // blue -> cyan -> yellow -> red ramp
    const double r = std::clamp(2.0 * u - 0.5, 0.0, 1.0);
    const double g = std::clamp(u < 0.5 ? 2.0 * u : 2.0 - 2.0 * u + 0.5, 0.0, 1.0);
    const double b = std::clamp(1.5 - 2.0 * u, 0.0, 1.0);
    return {static_cast<uint8_t>(255 * r), static_cast<uint8_t>(255 * g),
            static_cast<uint8_t>(255 * b)};
}

}  // namespace

Image plot_bifurcation(const BifurcationDiagram& d, int width, int height) {
    Image img(width, height, kWhite);
    double ylo = 1e300, yhi = -1e300;
    for (const auto& col : d.columns)
        for (const auto& s : col.samples)
            for (int c = 0; c < 4; ++c)
                if (std::isfinite(s[c])) {
                    ylo = std::min(ylo, s[c]);
                    yhi = std::max(yhi, s[c]);
                }
    pad_range(ylo, yhi);
    Frame f{width, height, d.axis.lo, d.axis.hi, ylo, yhi};
    draw_axes(img, f);
    for (const auto& col : d.columns) {
        const int x = f.px(col.axis_value);
        for (int c = 0; c < 4; ++c)
            for (const auto& s : col.samples)
                if (std::isfinite(s[c])) img.set(x, f.py(s[c]), kComponentColors[c]);
    }
    return img;
}

Image plot_lyapunov(const std::vector<LyapunovPoint>& pts, int width, int height) {
    Image img(width, height, kWhite);
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& p : pts) {
        xlo = std::min(xlo, p.axis_value);
        xhi = std::max(xhi, p.axis_value);
        if (!p.diverged && std::isfinite(p.lle)) {
            ylo = std::min(ylo, p.lle);
            yhi = std::max(yhi, p.lle);
        }
    }
    pad_range(ylo, yhi);
    if (!(xlo < xhi)) {
        xlo = 0;
        xhi = 1;
    }
    Frame f{width, height, xlo, xhi, ylo, yhi};
    if (ylo < 0.0 && yhi > 0.0) {
        const int y0 = f.py(0.0);
        for (int x = kMarginL; x < width - kMarginR; ++x) img.set(x, y0, kGridline);
    }
    draw_axes(img, f);
    bool have_prev = false;
    int px = 0, py = 0;
    for (const auto& p : pts) {
        if (p.diverged || !std::isfinite(p.lle)) {
            have_prev = false;
            continue;
        }
        const int x = f.px(p.axis_value), y = f.py(p.lle);
        if (have_prev) draw_line(img, px, py, x, y, kComponentColors[0]);
        px = x;
        py = y;
        have_prev = true;
    }
    return img;
}

Image plot_timeseries(const std::vector<PriceState>& orbit, int width, int height) {
    Image img(width, height, kWhite);
    double ylo = 1e300, yhi = -1e300;
    for (const auto& s : orbit)
        for (int c = 0; c < 4; ++c)
            if (std::isfinite(s[c])) {
                ylo = std::min(ylo, s[c]);
                yhi = std::max(yhi, s[c]);
            }
    pad_range(ylo, yhi);
    Frame f{width, height, 0.0, static_cast<double>(std::max<size_t>(orbit.size(), 2) - 1), ylo,
            yhi};
    draw_axes(img, f);
    for (int c = 0; c < 4; ++c) {
        bool have_prev = false;
        int px = 0, py = 0;
        for (size_t t = 0; t < orbit.size(); ++t) {
            if (!std::isfinite(orbit[t][c])) {
                have_prev = false;
                continue;
            }
            const int x = f.px(static_cast<double>(t)), y = f.py(orbit[t][c]);
            if (have_prev) draw_line(img, px, py, x, y, kComponentColors[c]);
            px = x;
            py = y;
            have_prev = true;
        }
    }
    return img;
}

Image plot_basin(const BasinGrid& g) {
    // The stable domain is drawn red (attractor 0); later attractors rotate hues.
    static const std::array<Rgb, 6> palette = {Rgb{220, 40, 40},  Rgb{40, 70, 220},
                                               Rgb{30, 160, 60},  Rgb{230, 160, 20},
                                               Rgb{150, 40, 190}, Rgb{20, 170, 170}};
    Image img(g.nx, g.ny, kWhite);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const int cell = iy * g.nx + ix;
            Rgb c = kWhite;  // diverged
            if (g.cls[cell] == BasinClass::Converged)
                c = palette[g.attractor_id[cell] % palette.size()];
            else if (g.cls[cell] == BasinClass::MaxIterExceeded)
                c = Rgb{30, 30, 30};
            img.set(ix, g.ny - 1 - iy, c);  // y axis upward
        }
    }
    return img;
}

Image plot_attractor(const AttractorSummary& a, int cx, int cy, int width, int height) {
    Image img(width, height, kWhite);
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : a.points) {
        if (!std::isfinite(s[cx]) || !std::isfinite(s[cy])) continue;
        xlo = std::min(xlo, s[cx]);
        xhi = std::max(xhi, s[cx]);
        ylo = std::min(ylo, s[cy]);
        yhi = std::max(yhi, s[cy]);
    }
    pad_range(xlo, xhi);
    pad_range(ylo, yhi);
    Frame f{width, height, xlo, xhi, ylo, yhi};
    draw_axes(img, f);
    for (const auto& s : a.points) {
        if (!std::isfinite(s[cx]) || !std::isfinite(s[cy])) continue;
        const int x = f.px(s[cx]), y = f.py(s[cy]);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) img.set(x + dx, y + dy, kComponentColors[0]);
    }
    return img;
}

Image plot_surface(const SurfaceGrid& g) {
    const int ne = g.eta_axis.samples, nl = g.lambda_axis.samples;
    const int gap = 4;
    Image img(3 * ne + 2 * gap, nl, kWhite);
    const std::array<double Profits::*, 3> fields = {&Profits::pi_r1, &Profits::pi_r2,
                                                     &Profits::pi_m};
    for (int panel = 0; panel < 3; ++panel) {
        double lo = 1e300, hi = -1e300;
        for (const auto& pt : g.points) {
            const double v = pt.profit.*fields[panel];
            if (!pt.diverged && std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (!(lo < hi)) {
            lo = 0;
            hi = 1;
        }
        for (int li = 0; li < nl; ++li) {
            for (int ei = 0; ei < ne; ++ei) {
                const auto& pt = g.points[static_cast<size_t>(li) * ne + ei];
                const double v = pt.profit.*fields[panel];
                Rgb c = kWhite;
                if (!pt.diverged && std::isfinite(v)) c = heat_color((v - lo) / (hi - lo));
                img.set(panel * (ne + gap) + ei, nl - 1 - li, c);
            }
        }
    }
    return img;
}

}  // namespace chainscope
