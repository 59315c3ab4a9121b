#include "disruptkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "disruptkit/types.hpp"

namespace disruptkit {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 770, kTop = 50, kBottom = 440;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const ReportStamp& stamp,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label, std::span<const SvgSeries> series,
                     std::span<const double> y_references) {
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!is_defined(y)) continue;
            if (!any) {
                x_min = x_max = x;
                y_min = y_max = y;
                any = true;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    for (const double r : y_references) {
        if (!any) {
            x_min = 0;
            x_max = 1;
            y_min = y_max = r;
            any = true;
        } else {
            y_min = std::min(y_min, r);
            y_max = std::max(y_max, r);
        }
    }
    if (!any) {
        x_min = y_min = 0;
        x_max = y_max = 1;
    }
    if (x_max == x_min) {
        x_min -= 1;
        x_max += 1;
    }
    if (y_max == y_min) {
        y_min -= 1;
        y_max += 1;
    }
    const double y_pad = (y_max - y_min) * 0.05;
    y_min -= y_pad;
    y_max += y_pad;

    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft); };
    auto sy = [&](double y) { return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop); };

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write output file: " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- " << stamp.line().substr(2) << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    const int n_ticks = 6;
    for (int t = 0; t < n_ticks; ++t) {
        const double fx = x_min + (x_max - x_min) * t / (n_ticks - 1);
        const double fy = y_min + (y_max - y_min) * t / (n_ticks - 1);
        out << "<line x1=\"" << coord(sx(fx)) << "\" y1=\"" << kBottom << "\" x2=\""
            << coord(sx(fx)) << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << coord(sx(fx)) << "\" y=\"" << kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << num(fx) << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << coord(sy(fy)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << coord(sy(fy)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(sy(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 45
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_label
        << "</text>\n";
    out << "<text x=\"20\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 20 " << (kTop + kBottom) / 2 << ")\">" << y_label
        << "</text>\n";

    for (const double r : y_references) {
        out << "<line x1=\"" << kLeft << "\" y1=\"" << coord(sy(r)) << "\" x2=\"" << kRight
            << "\" y2=\"" << coord(sy(r))
            << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"6,4\"/>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        std::string d;
        bool open = false;
        for (const auto& [x, y] : series[i].points) {
            if (!is_defined(y)) {
                open = false;
                continue;
            }
            d += open ? " L " : " M ";
            d += coord(sx(x)) + "," + coord(sy(y));
            open = true;
        }
        if (!d.empty()) {
            out << "<path d=\"" << d.substr(1) << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
        }
        const double ly = kTop + 8 + 18 * static_cast<double>(i);
        out << "<line x1=\"" << kRight - 150 << "\" y1=\"" << coord(ly) << "\" x2=\""
            << kRight - 120 << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kRight - 114 << "\" y=\"" << coord(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace disruptkit
