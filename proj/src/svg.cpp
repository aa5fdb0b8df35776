#include "relph/svg.hpp"

#include <algorithm>
#include <cmath>

#include "relph/io.hpp"

namespace relph {

namespace {

std::string num(double v) { return format_double(std::round(v * 100.0) / 100.0); }

std::string header(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) +
           " " + std::to_string(h) + "\">\n";
}

std::string text(double x, double y, const std::string& s, int size = 12) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           std::to_string(size) + "\">" + s + "</text>\n";
}

std::string rect(double x, double y, double w, double h, const std::string& fill,
                 const std::string& stroke = "none") {
    return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

std::string line(double x1, double y1, double x2, double y2, const std::string& stroke) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
           "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\"/>\n";
}

/// Blue -> yellow -> red ramp on [0, 1].
std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(30 + u * (250 - 30));
        g = static_cast<int>(60 + u * (220 - 60));
        b = static_cast<int>(180 - u * 140);
    } else {
        const double u = (t - 0.5) / 0.5;
        r = 250;
        g = static_cast<int>(220 - u * 180);
        b = static_cast<int>(40 - u * 10);
    }
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

const char* kClusterColors[] = {"#d62728", "#1f77b4", "#e6c229", "#222222",
                                "#9467bd", "#2ca02c", "#8c564b", "#7f7f7f"};

}  // namespace

std::string svg_diagram_plot(const PersistenceDiagram& pd0, const PersistenceDiagram& pd1,
                             const std::string& title) {
    const int w = 360, h = 360, margin = 45;
    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto* pd : {&pd0, &pd1}) {
        for (const auto& [b, d] : pd->pairs) {
            lo = any ? std::min(lo, b) : b;
            hi = any ? std::max(hi, b) : b;
            any = true;
            if (!std::isinf(d)) {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
    }
    if (!any || hi <= lo) {
        lo = 0.0;
        hi = 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * (w - 2 * margin); };
    auto sy = [&](double v) { return h - margin - (v - lo) / (hi - lo) * (h - 2 * margin); };

    std::string out = header(w, h);
    out += text(margin, 20, title);
    out += rect(margin, margin, w - 2 * margin, h - 2 * margin, "none", "#999999");
    out += line(sx(lo), sy(lo), sx(hi), sy(hi), "#bbbbbb");
    // top rail marks infinite deaths
    out += line(margin, margin, w - margin, margin, "#cc3333");
    for (const auto& [b, d] : pd0.pairs) {
        const double y = std::isinf(d) ? margin : sy(d);
        out += "<circle cx=\"" + num(sx(b)) + "\" cy=\"" + num(y) +
               "\" r=\"3.5\" fill=\"none\" stroke=\"#1f77b4\"/>\n";
    }
    for (const auto& [b, d] : pd1.pairs) {
        const double x = sx(b);
        const double y = std::isinf(d) ? margin : sy(d);
        out += line(x - 3, y - 3, x + 3, y + 3, "#d62728");
        out += line(x - 3, y + 3, x + 3, y - 3, "#d62728");
    }
    out += text(w / 2 - 12, h - 10, "birth");
    out += "</svg>\n";
    return out;
}

std::string svg_heatmap(int rows, int cols, const std::vector<double>& flat,
                        const std::string& title) {
    const int cell = 16, margin = 30;
    const int w = margin * 2 + cols * cell;
    const int h = margin * 2 + rows * cell;
    double hi = 0.0;
    for (double v : flat) hi = std::max(hi, v);
    std::string out = header(w, h);
    out += text(margin, 20, title);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double v = flat[static_cast<std::size_t>(r) * cols + c];
            // row 0 = lowest persistence, drawn at the bottom
            out += rect(margin + c * cell, margin + (rows - 1 - r) * cell, cell, cell,
                        hi > 0.0 ? ramp_color(v / hi) : ramp_color(0.0));
        }
    out += "</svg>\n";
    return out;
}

std::string svg_boxplot(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                        const std::string& title) {
    const int w = 120 + static_cast<int>(groups.size()) * 70;
    const int h = 320, margin = 45;
    double lo = 1.0, hi = 0.0;
    for (const auto& [label, values] : groups)
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi <= lo) {
        lo = 0.0;
        hi = 1.0;
    }
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sy = [&](double v) { return h - margin - (v - lo) / (hi - lo) * (h - 2 * margin); };

    std::string out = header(w, h);
    out += text(margin, 20, title);
    int gi = 0;
    for (const auto& [label, values] : groups) {
        std::vector<double> xs = values;
        std::sort(xs.begin(), xs.end());
        if (xs.empty()) continue;
        auto quantile = [&](double q) {
            const double pos = q * (xs.size() - 1);
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(i);
            return i + 1 < xs.size() ? xs[i] * (1 - frac) + xs[i + 1] * frac : xs[i];
        };
        const double cx = 90 + gi * 70;
        const double bw = 36;
        out += line(cx, sy(xs.front()), cx, sy(xs.back()), "#333333");
        out += rect(cx - bw / 2, sy(quantile(0.75)), bw,
                    sy(quantile(0.25)) - sy(quantile(0.75)), "#c6dbef", "#333333");
        out += line(cx - bw / 2, sy(quantile(0.5)), cx + bw / 2, sy(quantile(0.5)), "#d62728");
        out += text(cx - bw / 2, h - 18, label, 10);
        ++gi;
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        out += text(4, sy(v) + 4, num(v), 10);
        out += line(margin - 4, sy(v), margin, sy(v), "#333333");
    }
    out += "</svg>\n";
    return out;
}

namespace {

std::string grid_frame(const std::string& title, int cell, int margin, int& w, int& h) {
    w = margin * 2 + 9 * cell;
    h = margin * 2 + 9 * cell;
    std::string out = header(w, h);
    out += text(margin, 20, title);
    return out;
}

}  // namespace

std::string svg_grid_map(const std::vector<int>& values, const std::string& title) {
    const int cell = 30, margin = 35;
    int w = 0, h = 0;
    std::string out = grid_frame(title, cell, margin, w, h);
    for (int j = 0; j < 9; ++j)
        for (int i = 0; i < 9; ++i) {
            const int v = values[static_cast<std::size_t>(j) * 9 + i];
            const std::string fill =
                v < 0 ? "#eeeeee" : kClusterColors[v % 8];
            out += rect(margin + i * cell, margin + (8 - j) * cell, cell - 1, cell - 1, fill);
        }
    out += text(margin, h - 8, "chi index 0..8; c_half index bottom..top", 10);
    out += "</svg>\n";
    return out;
}

std::string svg_grid_scalar_map(const std::vector<double>& values, const std::string& title) {
    const int cell = 30, margin = 35;
    int w = 0, h = 0;
    std::string out = grid_frame(title, cell, margin, w, h);
    for (int j = 0; j < 9; ++j)
        for (int i = 0; i < 9; ++i) {
            const double v = values[static_cast<std::size_t>(j) * 9 + i];
            out += rect(margin + i * cell, margin + (8 - j) * cell, cell - 1, cell - 1,
                        ramp_color(v));
            out += text(margin + i * cell + 3, margin + (8 - j) * cell + cell / 2 + 4,
                        num(v), 8);
        }
    out += "</svg>\n";
    return out;
}

}  // namespace relph
