#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace histolab {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool secondary = false; // plotted against the right-hand axis
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string y2_label; // right-hand axis, used when a series is secondary
    std::vector<PlotSeries> series;
};

/// Self-contained SVG line plot: axes, tick labels, a legend and one
/// polyline per series. No external fonts or scripts.
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec);

} // namespace histolab
