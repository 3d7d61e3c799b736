#pragma once

// Minimal deterministic SVG output: 2-D region overlays and rate-vs-SNR curves.

#include "cohdof/geometry.hpp"
#include "cohdof/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace cohdof::svg {

struct Polygon {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> pts;  // in data coordinates
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

/// Orders polygon corners counter-clockwise around an interior point.
inline void sort_ccw(std::vector<std::pair<double, double>>& pts) {
    if (pts.empty()) return;
    double cx = 0, cy = 0;
    for (auto [x, y] : pts) {
        cx += x;
        cy += y;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](auto a, auto b) {
        return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
}

}  // namespace detail

/// Corners of the downward-closed hull of a 2-D V-region (origin included).
inline std::vector<DofPoint> closure_corners(const RegionV& v) {
    std::vector<DofPoint> pts{zero_point(2)};
    for (const auto& g : v.generators) {
        pts.push_back(g);
        pts.push_back({g[0], Rational(0)});
        pts.push_back({Rational(0), g[1]});
    }
    auto ext = extreme_points(pts);
    ext.insert(ext.begin(), zero_point(2));
    return ext;
}

inline Polygon to_polygon(const std::vector<DofPoint>& corners, std::string name, std::string color) {
    Polygon p{std::move(name), std::move(color), {}};
    for (const auto& c : corners) p.pts.push_back({c[0].to_double(), c[1].to_double()});
    detail::sort_ccw(p.pts);
    return p;
}

/// One <polygon> per region, axes labelled d₁ and d₂.
inline std::string region_plot(const std::vector<Polygon>& polys, const std::string& title) {
    const double w = 480, h = 480, pad = 60;
    double xmax = 0, ymax = 0;
    for (const auto& p : polys)
        for (auto [x, y] : p.pts) {
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    xmax = xmax > 0 ? xmax * 1.1 : 1;
    ymax = ymax > 0 ? ymax * 1.1 : 1;
    auto sx = [&](double x) { return pad + x / xmax * (w - 2 * pad); };
    auto sy = [&](double y) { return h - pad - y / ymax * (h - 2 * pad); };
    using detail::num;
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
    s += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"240\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title +
         "</text>\n";
    s += "<line x1=\"" + num(sx(0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(xmax)) + "\" y2=\"" + num(sy(0)) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(sx(0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(0)) + "\" y2=\"" + num(sy(ymax)) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(w - pad / 2) + "\" y=\"" + num(sy(0) + 20) +
         "\" font-family=\"sans-serif\" font-size=\"14\">d₁</text>\n";
    s += "<text x=\"" + num(sx(0) - 30) + "\" y=\"" + num(pad / 2 + 10) +
         "\" font-family=\"sans-serif\" font-size=\"14\">d₂</text>\n";
    s += "<text x=\"" + num(sx(xmax)) + "\" y=\"" + num(sy(0) + 36) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(xmax) + "</text>\n";
    s += "<text x=\"" + num(sx(0) - 6) + "\" y=\"" + num(sy(ymax)) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(ymax) + "</text>\n";
    double ly = 44;
    for (const auto& p : polys) {
        std::string pts;
        for (auto [x, y] : p.pts) {
            if (!pts.empty()) pts += ' ';
            pts += num(sx(x)) + "," + num(sy(y));
        }
        s += "<polygon id=\"" + p.name + "\" points=\"" + pts + "\" fill=\"" + p.color +
             "\" fill-opacity=\"0.25\" stroke=\"" + p.color + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(w - pad) + "\" y=\"" + num(ly) + "\" text-anchor=\"end\" fill=\"" + p.color +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + p.name + "</text>\n";
        ly += 16;
    }
    s += "</svg>\n";
    return s;
}

/// Rate versus SNR, one polyline per entity.
inline std::string rate_plot(const std::vector<RatePoint>& pts, const std::string& title) {
    const double w = 560, h = 420, pad = 60;
    if (pts.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    const double x0 = pts.front().snr_db, x1 = std::max(pts.back().snr_db, x0 + 1);
    double ymax = 0;
    for (const auto& p : pts)
        for (auto r : p.rate) ymax = std::max(ymax, r);
    ymax = ymax > 0 ? ymax * 1.1 : 1;
    auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (w - 2 * pad); };
    auto sy = [&](double y) { return h - pad - y / ymax * (h - 2 * pad); };
    using detail::num;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"420\" viewBox=\"0 0 560 420\">\n";
    s += "<rect width=\"560\" height=\"420\" fill=\"white\"/>\n";
    s += "<text x=\"280\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title +
         "</text>\n";
    s += "<line x1=\"" + num(sx(x0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(x1)) + "\" y2=\"" + num(sy(0)) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(sx(x0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(x0)) + "\" y2=\"" +
         num(sy(ymax)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"280\" y=\"" + num(h - 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">SNR (dB)</text>\n";
    s += "<text x=\"16\" y=\"" + num(h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " + num(h / 2) +
         ")\">rate (bits/slot)</text>\n";
    for (std::size_t e = 0; e < pts.front().rate.size(); ++e) {
        std::string line;
        for (const auto& p : pts) {
            if (!line.empty()) line += ' ';
            line += num(sx(p.snr_db)) + "," + num(sy(p.rate[e]));
        }
        const char* c = colors[e % 6];
        s += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(w - pad) + "\" y=\"" + num(44 + 16.0 * static_cast<double>(e)) +
             "\" text-anchor=\"end\" fill=\"" + c + "\" font-family=\"sans-serif\" font-size=\"12\">entity " +
             std::to_string(e + 1) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace cohdof::svg
