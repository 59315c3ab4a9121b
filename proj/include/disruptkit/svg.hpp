#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "disruptkit/report.hpp"

namespace disruptkit {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y); NaN y breaks the line
};

// Minimal polyline chart: axes with ticks, optional dashed horizontal
// reference lines, a legend, and one path per series. Output is a pure
// function of the inputs.
void write_svg_chart(const std::string& path, const ReportStamp& stamp,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label, std::span<const SvgSeries> series,
                     std::span<const double> y_references);

}  // namespace disruptkit
