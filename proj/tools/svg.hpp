#pragma once

#include <string>
#include <vector>

namespace wendy::svg {

struct Series {
    std::string label;
    std::string color;
    double width = 1.5;
    double opacity = 1.0;
    std::vector<double> x;
    std::vector<double> y;
};

/// Writes a minimal line chart: axes, tick labels, and one polyline per
/// series. No external plotting dependency; CSV/JSON stay the source of
/// truth and this is a quick-look view only.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

}  // namespace wendy::svg
