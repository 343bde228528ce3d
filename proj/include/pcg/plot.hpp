#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pcg {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // sorted by x
};

// Minimal SVG line chart: axes, ticks, one polyline per series with point
// markers, legend in the top-left plot corner.
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series);

}  // namespace pcg
