#include "laglens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "laglens/errors.hpp"

namespace laglens::io {
namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 44.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) {
        return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw Error("svg: cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // frame and extreme tick labels
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 18
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << num(xmin) << "</text>\n";
    out << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << num(xmax) << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << py(ymin)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << num(ymin) << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << py(ymax) + 10
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << num(ymax) << "</text>\n";

    double legend_y = kMarginTop + 14.0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << kMarginLeft + plot_w - 8 << "\" y=\"" << legend_y
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
                << "fill=\"" << s.color << "\">" << s.label << "</text>\n";
            legend_y += 16.0;
        }
    }
    out << "</svg>\n";
}

}  // namespace laglens::io
