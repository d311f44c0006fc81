#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace wendy::svg {

namespace {

constexpr double kWidth = 680;
constexpr double kHeight = 440;
constexpr double kLeft = 70, kRight = 30, kTop = 46, kBottom = 56;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) { xmax = xmin + 1; xmin -= 1; }
    if (!(ymax > ymin)) { ymax = ymin + 1; ymin -= 1; }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(kWidth) +
           " " + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
           title + "</text>\n";

    // axes
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" +
           fmt(kLeft + pw) + "\" y2=\"" + fmt(kTop + ph) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kTop + ph) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 4.0;
        const double fy = ymin + (ymax - ymin) * t / 4.0;
        out += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(kTop + ph + 18) +
               "\" text-anchor=\"middle\">" + fmt(fx) + "</text>\n";
        out += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(py(fy) + 4) +
               "\" text-anchor=\"end\">" + fmt(fy) + "</text>\n";
        out += "<line x1=\"" + fmt(px(fx)) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" +
               fmt(px(fx)) + "\" y2=\"" + fmt(kTop + ph + 4) + "\" stroke=\"black\"/>\n";
        out += "<line x1=\"" + fmt(kLeft - 4) + "\" y1=\"" + fmt(py(fy)) + "\" x2=\"" +
               fmt(kLeft) + "\" y2=\"" + fmt(py(fy)) + "\" stroke=\"black\"/>\n";
    }
    out += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 14) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(kTop + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fmt(kTop + ph / 2) +
           ")\">" + y_label + "</text>\n";

    for (const auto& s : series) {
        std::string pts;
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
        }
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" +
               fmt(s.width) + "\" stroke-opacity=\"" + fmt(s.opacity) + "\" points=\"" +
               pts + "\"/>\n";
    }

    // legend for labelled series
    double ly = kTop + 6;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        out += "<line x1=\"" + fmt(kLeft + pw - 110) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(kLeft + pw - 86) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(kLeft + pw - 80) + "\" y=\"" + fmt(ly + 4) + "\">" +
               s.label + "</text>\n";
        ly += 16;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace wendy::svg
