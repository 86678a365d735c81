#include "histolab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "histolab/errors.hpp"

namespace histolab {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0, kRight = 790.0;
constexpr double kTop = 46.0, kBottom = 460.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo <= hi)) { lo = 0.0; hi = 1.0; }
        if (lo == hi) { lo -= 1.0; hi += 1.0; }
    }
    double scale(double v, double out_lo, double out_hi) const {
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec) {
    if (spec.series.empty())
        throw ValidationError("svg plot: no series to draw");

    Range xr, yr, y2r;
    bool has_secondary = false;
    for (const PlotSeries& s : spec.series) {
        if (s.x.size() != s.y.size())
            throw ValidationError("svg plot: series '" + s.label + "' length mismatch");
        for (double v : s.x) xr.add(v);
        for (double v : s.y) (s.secondary ? y2r : yr).add(v);
        has_secondary = has_secondary || s.secondary;
    }
    xr.pad();
    yr.pad();
    y2r.pad();

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << (kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << escape_xml(spec.title) << "</text>\n";

    // Axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    if (has_secondary)
        out << "<line x1=\"" << kRight << "\" y1=\"" << kTop << "\" x2=\"" << kRight
            << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";

    // Ticks and grid
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double f = static_cast<double>(i) / ticks;
        const double xv = xr.lo + f * (xr.hi - xr.lo);
        const double xp = xr.scale(xv, kLeft, kRight);
        out << "<line x1=\"" << xp << "\" y1=\"" << kBottom << "\" x2=\"" << xp
            << "\" y2=\"" << (kBottom + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << xp << "\" y=\"" << (kBottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(xv) << "</text>\n";

        const double yv = yr.lo + f * (yr.hi - yr.lo);
        const double yp = yr.scale(yv, kBottom, kTop);
        out << "<line x1=\"" << (kLeft - 5) << "\" y1=\"" << yp << "\" x2=\"" << kLeft
            << "\" y2=\"" << yp << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << (kLeft - 8) << "\" y=\"" << (yp + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(yv) << "</text>\n";

        if (has_secondary) {
            const double y2v = y2r.lo + f * (y2r.hi - y2r.lo);
            const double y2p = y2r.scale(y2v, kBottom, kTop);
            out << "<text x=\"" << (kRight + 8) << "\" y=\"" << (y2p + 4)
                << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\">"
                << num(y2v) << "</text>\n";
        }
    }

    // Axis titles
    out << "<text x=\"" << ((kLeft + kRight) / 2) << "\" y=\"" << (kBottom + 42)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(spec.x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << ((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << ((kTop + kBottom) / 2) << ")\">" << escape_xml(spec.y_label) << "</text>\n";
    if (has_secondary && !spec.y2_label.empty())
        out << "<text x=\"" << (kWidth - 14) << "\" y=\"" << ((kTop + kBottom) / 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(90 "
            << (kWidth - 14) << ' ' << ((kTop + kBottom) / 2) << ")\">"
            << escape_xml(spec.y2_label) << "</text>\n";

    // One polyline per series
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const PlotSeries& s = spec.series[si];
        const Range& vr = s.secondary ? y2r : yr;
        out << "<polyline fill=\"none\" stroke=\""
            << kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            out << num(xr.scale(s.x[i], kLeft, kRight)) << ','
                << num(vr.scale(s.y[i], kBottom, kTop));
        }
        out << "\"/>\n";
    }

    // Legend, top-right inside the plot area
    double ly = kTop + 12;
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const PlotSeries& s = spec.series[si];
        out << "<line x1=\"" << (kRight - 150) << "\" y1=\"" << ly << "\" x2=\""
            << (kRight - 120) << "\" y2=\"" << ly << "\" stroke=\""
            << kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))]
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << (kRight - 112) << "\" y=\"" << (ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
            << (s.secondary ? " (right)" : "") << "</text>\n";
        ly += 18;
    }

    out << "</svg>\n";
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace histolab
