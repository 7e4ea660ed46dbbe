#include "folink/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "folink/csv.hpp"

namespace folink {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 80;
constexpr double kMarginRight = 30;
constexpr double kMarginTop = 50;
constexpr double kMarginBottom = 60;

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_series(std::string name, std::vector<std::pair<double, double>> points) {
    series_.push_back({std::move(name), std::move(points)});
}

std::string SvgPlot::render() const {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
    bool first = true;
    for (const auto& s : series_) {
        for (const auto& [x, y] : s.points) {
            if (log_y_ && y <= 0.0) {
                continue;
            }
            const double yy = log_y_ ? std::log10(y) : y;
            if (first) {
                x_min = x_max = x;
                y_min = y_max = yy;
                first = false;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, yy);
                y_max = std::max(y_max, yy);
            }
        }
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max == y_min) {
        y_max = y_min + 1.0;
    }
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) {
        const double yy = log_y_ ? std::log10(y) : y;
        return kMarginTop + (1.0 - (yy - y_min) / (y_max - y_min)) * plot_h;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">"
        << title_ << "</text>\n";

    // Axes with 5 ticks per side.
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = x_min + (x_max - x_min) * t / 5.0;
        const double px = sx(fx);
        out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << kMarginTop + plot_h + 6 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 22
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(fx) << "</text>\n";
        const double fy = y_min + (y_max - y_min) * t / 5.0;
        const double py = kMarginTop + (1.0 - static_cast<double>(t) / 5.0) * plot_h;
        out << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        const double label = log_y_ ? std::pow(10.0, fy) : fy;
        out << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-size=\"11\">"
            << (log_y_ ? ("1e" + format_double(fy)) : format_double(label)) << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
    out << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
        << kMarginTop + plot_h / 2 << ")\">" << y_label_ << "</text>\n";

    for (std::size_t s = 0; s < series_.size(); ++s) {
        const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
        std::ostringstream pts;
        for (const auto& [x, y] : series_[s].points) {
            if (log_y_ && y <= 0.0) {
                continue;
            }
            pts << sx(x) << "," << sy(y) << " ";
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        for (const auto& [x, y] : series_[s].points) {
            if (log_y_ && y <= 0.0) {
                continue;
            }
            out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << kMarginLeft + plot_w - 8 << "\" y=\""
            << kMarginTop + 16 + 16 * static_cast<double>(s)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
            << series_[s].name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void SvgPlot::save(const std::filesystem::path& path) const {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write SVG file: " + path.string());
        }
        out << render();
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace folink
