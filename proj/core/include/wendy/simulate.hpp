#pragma once

#include <Eigen/Dense>

#include "wendy/grid.hpp"
#include "wendy/models.hpp"

namespace wendy {

/// Fixed-step classical RK4 on a uniform output grid of M+1 points over
/// [t0, T], taking `substeps` internal steps per output interval. Row 0
/// equals u0; fully deterministic. Throws DivergenceError (with the offending
/// time) if the state leaves the finite range.
StateGrid integrate(const ModelSpec& model, const Eigen::MatrixXd& W,
                    const Eigen::VectorXd& u0, double t0, double T, int segments,
                    int substeps = 20);

}  // namespace wendy
