#pragma once

#include <string>
#include <vector>

namespace zetalaw::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 640;
    int height = 400;
};

/// Static SVG line chart with markers, axes, min/max tick labels and a legend.
///
/// Points that cannot be drawn on a log axis (non-positive values) are skipped.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

void write_text(const std::string& path, const std::string& text);

}  // namespace zetalaw::cli
