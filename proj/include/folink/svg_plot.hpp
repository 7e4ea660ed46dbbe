#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace folink {

/// Dependency-free line plot writer: polylines with markers, linear or
/// log10 axes, tick labels. Enough for the rate/attenuation figures.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void set_log_y(bool log_y) { log_y_ = log_y; }
    void add_series(std::string name, std::vector<std::pair<double, double>> points);

    std::string render() const;
    void save(const std::filesystem::path& path) const;

private:
    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    bool log_y_ = false;
    std::vector<Series> series_;
};

}  // namespace folink
