#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gbp::harness {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 640;
    int height = 400;
};

// Polyline chart; non-positive values are dropped on log axes.
void write_line_svg(std::ostream& os, const std::vector<PlotSeries>& series, const PlotOptions& opt);

}  // namespace gbp::harness
