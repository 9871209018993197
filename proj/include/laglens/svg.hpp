#pragma once

#include <string>
#include <vector>

namespace laglens::io {

struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart (no external plotting dependency). Axes span
/// the joint data range; min/max are written as tick labels.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

}  // namespace laglens::io
