#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace wendy {

/// States sampled on a uniform time grid: M+1 points t_m = t0 + m*dt,
/// one row per point, one column per state.
struct StateGrid {
    double t0 = 0.0;
    double dt = 0.0;
    Eigen::MatrixXd states;  // (M+1) x d

    int points() const { return static_cast<int>(states.rows()); }
    int segments() const { return points() - 1; }
    int dim() const { return static_cast<int>(states.cols()); }

    /// t_m computed as t0 + m*dt (never by accumulation).
    double time(int m) const { return t0 + m * dt; }
    double t_end() const { return time(segments()); }
};

/// Writes `t,u1,...,ud` rows at full double precision (17 significant digits).
void write_trajectory_csv(std::ostream& os, const StateGrid& grid);

/// Parses a trajectory CSV produced by write_trajectory_csv.
StateGrid read_trajectory_csv(std::istream& is);

}  // namespace wendy
