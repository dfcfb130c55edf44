#include "knnreg/error.hpp"
#include "knnreg/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace knnreg {

namespace {

struct Point {
    double k;
    double value;
};

std::vector<Point> series(const SweepResult& result, Criterion criterion) {
    std::vector<Point> pts;
    for (const auto& row : result.rows) {
        if (criterion == Criterion::rmse) {
            pts.push_back({static_cast<double>(row.k), row.metrics.rmse});
        } else if (row.metrics.r_squared) {
            pts.push_back({static_cast<double>(row.k), *row.metrics.r_squared});
        }
    }
    return pts;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

// Roughly `target` round-number steps across [lo, hi].
double nice_step(double lo, double hi, int target) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double nice = r <= 1.0 ? 1.0 : r <= 2.0 ? 2.0 : r <= 5.0 ? 5.0 : 10.0;
    return nice * mag;
}

} // namespace

double ChartLayout::x_of(double k) const {
    return left + (k - k_lo) / (k_hi - k_lo) * (width - left - right);
}

double ChartLayout::y_of(double v) const {
    return height - bottom - (v - y_lo) / (y_hi - y_lo) * (height - top - bottom);
}

ChartLayout chart_layout(const SweepResult& result, Criterion criterion) {
    const auto pts = series(result, criterion);
    if (pts.size() < 2) {
        throw InvalidArgument("a chart needs at least 2 defined points, got " + std::to_string(pts.size()));
    }
    ChartLayout layout;
    layout.k_lo = pts.front().k;
    layout.k_hi = pts.back().k;
    auto [lo_it, hi_it] = std::minmax_element(pts.begin(), pts.end(),
                                              [](const Point& a, const Point& b) { return a.value < b.value; });
    double lo = lo_it->value;
    double hi = hi_it->value;
    double pad = 0.05 * (hi - lo);
    if (pad == 0.0) {
        pad = lo != 0.0 ? 0.05 * std::abs(lo) : 1.0;
    }
    layout.y_lo = lo - pad;
    layout.y_hi = hi + pad;
    return layout;
}

std::string render_chart(const SweepResult& result, Criterion criterion, const std::string& title) {
    const ChartLayout L = chart_layout(result, criterion);
    const auto pts = series(result, criterion);
    const std::size_t best_k = select_best(result, criterion);
    const char* y_label = criterion == Criterion::rmse ? "RMSE" : "R-squared";

    const double plot_left = ChartLayout::left;
    const double plot_right = ChartLayout::width - ChartLayout::right;
    const double plot_top = ChartLayout::top;
    const double plot_bottom = ChartLayout::height - ChartLayout::bottom;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
        << "<text x=\"400.00\" y=\"28.00\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
        << escape(title) << "</text>\n";

    // Axes.
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_bottom) << "\" x2=\"" << fmt(plot_right)
        << "\" y2=\"" << fmt(plot_bottom) << "\"/>\n"
        << "<line x1=\"" << fmt(plot_left) << "\" y1=\"" << fmt(plot_top) << "\" x2=\"" << fmt(plot_left)
        << "\" y2=\"" << fmt(plot_bottom) << "\"/>\n"
        << "</g>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    const double x_step = std::max(1.0, std::ceil(nice_step(L.k_lo, L.k_hi, 10)));
    const double x_first = std::ceil(L.k_lo / x_step) * x_step;
    for (int i = 0; x_first + i * x_step <= L.k_hi; ++i) {
        const double k = x_first + i * x_step;
        const double x = L.x_of(k);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(plot_bottom) << "\" x2=\"" << fmt(x) << "\" y2=\""
            << fmt(plot_bottom + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(plot_bottom + 20) << "\" text-anchor=\"middle\">"
            << tick_label(k) << "</text>\n";
    }
    const double y_step = nice_step(L.y_lo, L.y_hi, 6);
    const double y_first = std::ceil(L.y_lo / y_step) * y_step;
    for (int i = 0; y_first + i * y_step <= L.y_hi; ++i) {
        const double v = y_first + i * y_step;
        const double y = L.y_of(v);
        // Snap values within rounding noise of zero.
        const double shown = std::abs(v) < y_step * 1e-9 ? 0.0 : v;
        svg << "<line x1=\"" << fmt(plot_left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(plot_right)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << fmt(plot_left - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
            << tick_label(shown) << "</text>\n";
    }
    svg << "<text x=\"" << fmt((plot_left + plot_right) / 2) << "\" y=\"" << fmt(ChartLayout::height - 15)
        << "\" text-anchor=\"middle\" font-size=\"14\">k</text>\n"
        << "<text x=\"20.00\" y=\"" << fmt((plot_top + plot_bottom) / 2) << "\" text-anchor=\"middle\" "
        << "font-size=\"14\" transform=\"rotate(-90 20.00 " << fmt((plot_top + plot_bottom) / 2) << ")\">" << y_label
        << "</text>\n"
        << "</g>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? " " : "") << fmt(L.x_of(pts[i].k)) << ',' << fmt(L.y_of(pts[i].value));
    }
    svg << "\"/>\n";

    const auto best = std::find_if(pts.begin(), pts.end(),
                                   [&](const Point& p) { return p.k == static_cast<double>(best_k); });
    const double bx = L.x_of(best->k);
    const double by = L.y_of(best->value);
    svg << "<circle id=\"best-k\" cx=\"" << fmt(bx) << "\" cy=\"" << fmt(by)
        << "\" r=\"5\" fill=\"#d62728\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << fmt(bx + 8) << "\" y=\"" << fmt(by - 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">best k = " << best_k << "</text>\n"
        << "</svg>\n";
    return svg.str();
}

void emit_chart(const SweepResult& result, Criterion criterion, const std::filesystem::path& path,
                const std::string& title) {
    const std::string svg = render_chart(result, criterion, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << svg;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace knnreg
