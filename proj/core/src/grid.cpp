#include "wendy/grid.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wendy/errors.hpp"

namespace wendy {

namespace {

void append_g17(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const StateGrid& grid) {
    std::string line = "t";
    for (int i = 1; i <= grid.dim(); ++i) {
        line += ",u" + std::to_string(i);
    }
    os << line << '\n';
    for (int m = 0; m < grid.points(); ++m) {
        line.clear();
        append_g17(line, grid.time(m));
        for (int i = 0; i < grid.dim(); ++i) {
            line += ',';
            append_g17(line, grid.states(m, i));
        }
        os << line << '\n';
    }
}

StateGrid read_trajectory_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("t,", 0) != 0) {
        throw ConfigError("trajectory CSV: missing 't,u1,...' header");
    }
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        if (row.size() < 2) {
            throw ConfigError("trajectory CSV: row with fewer than 2 columns");
        }
        times.push_back(row[0]);
        rows.emplace_back(row.begin() + 1, row.end());
    }
    if (rows.size() < 2) {
        throw ConfigError("trajectory CSV: need at least 2 rows");
    }
    const auto d = rows[0].size();
    StateGrid grid;
    grid.t0 = times.front();
    grid.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    grid.states.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (size_t m = 0; m < rows.size(); ++m) {
        if (rows[m].size() != d) {
            throw ConfigError("trajectory CSV: ragged row");
        }
        for (size_t i = 0; i < d; ++i) {
            grid.states(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)) = rows[m][i];
        }
    }
    return grid;
}

}  // namespace wendy
