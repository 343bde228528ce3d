#include "pcg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pcg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const PlotSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmax <= xmin) {
        xmax = xmin + 1.0;
    }
    ymin = std::min(ymin, 0.0);
    if (ymax <= ymin) {
        ymax = ymin + 1.0;
    }
    ymax *= 1.05;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto sx = [&](double x) {
        return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
    };
    const auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h;
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write plot: " + path.string());
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << fmt(sx(xv)) << "\" y1=\"" << kMarginTop + plot_h
            << "\" x2=\"" << fmt(sx(xv)) << "\" y2=\"" << kMarginTop + plot_h + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(sy(yv))
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << fmt(sy(yv))
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : series[s].points) {
            out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
        }
        out << "\"/>\n";
        for (const auto& [x, y] : series[s].points) {
            out << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const double ly = kMarginTop + 16.0 + 18.0 * static_cast<double>(s);
        out << "<line x1=\"" << kMarginLeft + 12 << "\" y1=\"" << fmt(ly - 4)
            << "\" x2=\"" << kMarginLeft + 36 << "\" y2=\"" << fmt(ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kMarginLeft + 42 << "\" y=\"" << fmt(ly) << "\">"
            << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace pcg
