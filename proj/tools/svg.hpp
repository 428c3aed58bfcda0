// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trendlet/matrix.hpp"

namespace trendlet::svg {

// Fixed two-decimal coordinates keep output byte-stable.
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class Document {
public:
    Document(double width, double height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& extra = "") {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
              << "\" height=\"" << num(h) << "\" fill=\"" << fill << '"' << extra << "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
              << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(width) << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width = 1.0) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(width) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << num(pts[i].first) << ',' << num(pts[i].second);
        }
        body_ << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, double size = 12.0,
              const std::string& anchor = "start") {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(s)
              << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
            << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' '
            << num(height_) << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    return colors;
}

inline std::string rgb(double r, double g, double b) {
    char buf[8];
    const auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255)); };
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
    return buf;
}

/// White (0) to dark blue (1).
inline std::string sequential(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return rgb(1.0 - 0.9 * t, 1.0 - 0.7 * t, 1.0 - 0.3 * t);
}

/// Blue (-1) / white (0) / red (+1).
inline std::string diverging(double t) {
    t = std::clamp(t, -1.0, 1.0);
    if (t < 0) return rgb(1.0 + t, 1.0 + 0.6 * t, 1.0);
    return rgb(1.0, 1.0 - 0.8 * t, 1.0 - t);
}

struct Series {
    std::string name;
    std::vector<double> values;
    std::string color;
};

/// Stacked line panels sharing an x axis (sample index).
struct LinePanel {
    std::string title;
    std::vector<Series> series;
};

inline std::string line_panels(const std::vector<LinePanel>& panels, const std::string& first_x,
                               const std::string& last_x) {
    const double width = 900, panel_h = 180, margin = 50, gap = 30;
    const double height = margin + panels.size() * (panel_h + gap) + 20;
    Document doc(width, height);
    double top = margin;
    for (const auto& p : panels) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        std::size_t n = 0;
        for (const auto& s : p.series) {
            for (double v : s.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            n = std::max(n, s.values.size());
        }
        if (!(hi > lo)) {
            lo = (std::isfinite(lo) ? lo : 0.0) - 1.0;
            hi = lo + 2.0;
        }
        const double x0 = margin, x1 = width - 20;
        const auto px = [&](std::size_t i) {
            return n < 2 ? x0 : x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n - 1);
        };
        const auto py = [&](double v) { return top + panel_h - (v - lo) / (hi - lo) * panel_h; };
        doc.rect(x0, top, x1 - x0, panel_h, "none", " stroke=\"#999\"");
        doc.text(x0, top - 6, p.title, 13);
        doc.text(x0 - 4, top + 10, num(hi), 9, "end");
        doc.text(x0 - 4, top + panel_h, num(lo), 9, "end");
        if (lo < 0 && hi > 0) doc.line(x0, py(0.0), x1, py(0.0), "#ccc");
        for (const auto& s : p.series) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < s.values.size(); ++i) pts.emplace_back(px(i), py(s.values[i]));
            doc.polyline(pts, s.color, 1.0);
        }
        doc.text(x0, top + panel_h + 14, first_x, 9);
        doc.text(x1, top + panel_h + 14, last_x, 9, "end");
        top += panel_h + gap;
    }
    return doc.str();
}

/// Square heatmap of values in [0, 1] with row/column labels.
inline std::string heatmap(const Matrix& values, const std::vector<std::string>& labels,
                           const std::string& title) {
    const std::size_t n = values.rows();
    const double cell = std::clamp(600.0 / std::max<std::size_t>(n, 1), 4.0, 24.0);
    const double left = 80, top = 50;
    Document doc(left + cell * n + 100, top + cell * n + 40);
    doc.text(left, 30, title, 14);
    for (std::size_t i = 0; i < n; ++i) {
        doc.text(left - 4, top + cell * (i + 0.75), labels[i], std::min(cell * 0.8, 10.0), "end");
        for (std::size_t j = 0; j < values.cols(); ++j) {
            doc.rect(left + cell * j, top + cell * i, cell, cell, sequential(values(i, j)));
        }
    }
    const double lx = left + cell * n + 20;
    for (int s = 0; s <= 10; ++s) {
        doc.rect(lx, top + 20 * (10 - s), 16, 20, sequential(s / 10.0));
    }
    doc.text(lx + 20, top + 12, "1", 10);
    doc.text(lx + 20, top + 220, "0", 10);
    return doc.str();
}

/// Entities (rows) x features (columns) with a diverging scale clamped at +-3.
inline std::string coefficient_map(const Matrix& z, const std::vector<std::string>& rows,
                                   const std::vector<std::string>& cols,
                                   const std::vector<std::string>& row_marks,
                                   const std::string& title) {
    const double cw = 28, ch = 12, left = 110, top = 70;
    Document doc(left + cw * cols.size() + 40, top + ch * rows.size() + 30);
    doc.text(left, 24, title, 14);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        doc.text(left + cw * (j + 0.5), top - 8, cols[j], 8, "middle");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        doc.text(left - 4, top + ch * (i + 0.8), rows[i] + " [" + row_marks[i] + "]", 8, "end");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            doc.rect(left + cw * j, top + ch * i, cw, ch, diverging(z(i, j) / 3.0));
        }
    }
    return doc.str();
}

struct BiplotPoint {
    double x;
    double y;
    std::size_t group;
};

struct Arrow {
    std::string name;
    double x;
    double y;
};

inline std::string biplot(const std::vector<BiplotPoint>& points, const std::vector<Arrow>& arrows,
                          const std::vector<std::string>& group_names, const std::string& title) {
    const double size = 640, margin = 60;
    Document doc(size + 160, size);
    double extent = 1e-12;
    for (const auto& p : points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    double arrow_extent = 1e-12;
    for (const auto& a : arrows) arrow_extent = std::max({arrow_extent, std::abs(a.x), std::abs(a.y)});
    const double arrow_scale = extent / arrow_extent;
    const double half = (size - 2 * margin) / 2;
    const auto px = [&](double x) { return margin + half + x / extent * half; };
    const auto py = [&](double y) { return margin + half - y / extent * half; };
    doc.text(margin, 30, title, 14);
    doc.line(px(-extent), py(0), px(extent), py(0), "#ccc");
    doc.line(px(0), py(-extent), px(0), py(extent), "#ccc");
    for (const auto& p : points) {
        doc.circle(px(p.x), py(p.y), 4, palette()[p.group % palette().size()]);
    }
    for (const auto& a : arrows) {
        const double ex = a.x * arrow_scale, ey = a.y * arrow_scale;
        doc.line(px(0), py(0), px(ex), py(ey), "#444", 0.8);
        doc.text(px(ex), py(ey), a.name, 9);
    }
    for (std::size_t g = 0; g < group_names.size(); ++g) {
        doc.circle(size + 10, margin + 20 * g, 5, palette()[g % palette().size()]);
        doc.text(size + 20, margin + 20 * g + 4, group_names[g], 11);
    }
    return doc.str();
}

}  // namespace trendlet::svg
