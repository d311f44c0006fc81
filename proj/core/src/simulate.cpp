#include "wendy/simulate.hpp"

#include <string>

#include "wendy/errors.hpp"

namespace wendy {

StateGrid integrate(const ModelSpec& model, const Eigen::MatrixXd& W,
                    const Eigen::VectorXd& u0, double t0, double T, int segments,
                    int substeps) {
    if (!(T > t0)) throw ConfigError("integrate: need T > t0");
    if (segments < 2) throw ConfigError("integrate: need at least 2 segments");
    if (substeps < 1) throw ConfigError("integrate: need substeps >= 1");
    if (u0.size() != model.d) throw ConfigError("integrate: u0 dimension mismatch");
    if (W.rows() != model.J || W.cols() != model.d) {
        throw ConfigError("integrate: W must be J x d");
    }

    StateGrid grid;
    grid.t0 = t0;
    grid.dt = (T - t0) / segments;
    grid.states.resize(segments + 1, model.d);
    grid.states.row(0) = u0.transpose();

    const double h = grid.dt / substeps;
    Eigen::VectorXd u = u0;
    for (int m = 0; m < segments; ++m) {
        const double t_next = grid.time(m + 1);
        try {
            for (int s = 0; s < substeps; ++s) {
                const Eigen::VectorXd k1 = rhs(model, u, W);
                const Eigen::VectorXd k2 = rhs(model, u + 0.5 * h * k1, W);
                const Eigen::VectorXd k3 = rhs(model, u + 0.5 * h * k2, W);
                const Eigen::VectorXd k4 = rhs(model, u + h * k3, W);
                u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        } catch (const EvaluationError&) {
            throw DivergenceError("integrate: trajectory of '" + model.name +
                                      "' diverged near t=" + std::to_string(t_next),
                                  t_next);
        }
        if (!u.allFinite()) {
            throw DivergenceError("integrate: trajectory of '" + model.name +
                                      "' diverged near t=" + std::to_string(t_next),
                                  t_next);
        }
        grid.states.row(m + 1) = u.transpose();
    }
    return grid;
}

}  // namespace wendy
