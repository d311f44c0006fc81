#include "wendy/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wendy/errors.hpp"

namespace wendy {

Eigen::VectorXd quadrature_weights(int segments, double dt) {
    if (segments < 2) throw ConfigError("quadrature_weights: need segments >= 2");
    if (!(dt > 0.0)) throw ConfigError("quadrature_weights: need dt > 0");
    Eigen::VectorXd q = Eigen::VectorXd::Constant(segments + 1, dt);
    q[0] = 0.5 * dt;
    q[segments] = 0.5 * dt;
    return q;
}

int default_radius_mult(int points) {
    return std::max(2, points / 16);
}

int default_center_count(int points, int radius_mult) {
    return points - 2 * radius_mult;
}

TestFunctionBasis build_basis(const StateGrid& grid, int K, int radius_mult,
                              double eta) {
    const int M = grid.segments();
    if (radius_mult < 2) throw ConfigError("build_basis: radius_mult must be >= 2");
    if (!(eta > 0.0)) throw ConfigError("build_basis: eta must be > 0");
    if (2 * radius_mult > M) {
        throw ConfigError("build_basis: support of width 2*" +
                          std::to_string(radius_mult) +
                          " grid intervals exceeds the grid (M=" + std::to_string(M) +
                          ")");
    }
    if (K < 1) throw ConfigError("build_basis: need K >= 1");

    TestFunctionBasis basis;
    basis.radius_mult = radius_mult;
    basis.radius = radius_mult * grid.dt;
    basis.eta = eta;

    const double lo = grid.t0 + basis.radius;
    const double hi = grid.t_end() - basis.radius;
    basis.centers.resize(K);
    if (K == 1) {
        basis.centers[0] = 0.5 * (lo + hi);
    } else {
        if (hi <= lo) {
            throw ConfigError("build_basis: " + std::to_string(K) +
                              " centers coincide on a degenerate interval");
        }
        const double step = (hi - lo) / (K - 1);
        for (int k = 0; k < K; ++k) basis.centers[k] = lo + k * step;
    }

    basis.phi = Eigen::MatrixXd::Zero(K, M + 1);
    basis.phi_dot = Eigen::MatrixXd::Zero(K, M + 1);
    for (int k = 0; k < K; ++k) {
        const double c = basis.centers[k];
        for (int m = 0; m <= M; ++m) {
            const double s = (grid.time(m) - c) / basis.radius;
            if (std::abs(s) >= 1.0) continue;
            const double om = 1.0 - s * s;
            const double value = std::exp(-eta * s * s / om);
            basis.phi(k, m) = value;
            basis.phi_dot(k, m) = value * (-2.0 * eta * s / (om * om)) / basis.radius;
        }
    }
    return basis;
}

WeakSystem assemble(const TestFunctionBasis& basis, const Eigen::VectorXd& q,
                    const Eigen::MatrixXd& theta, const Eigen::MatrixXd& U) {
    const Eigen::Index n = q.size();
    if (theta.rows() != n || U.rows() != n || basis.phi.cols() != n) {
        throw ConfigError("assemble: row counts of phi, q, theta, U must agree");
    }
    WeakSystem sys;
    sys.q = q;
    sys.G = basis.phi * (q.asDiagonal() * theta);
    sys.B = -(basis.phi_dot * (q.asDiagonal() * U));
    return sys;
}

RankReport check_rank(const WeakSystem& sys) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(sys.G);
    const Eigen::VectorXd& sv = svd.singularValues();
    RankReport report;
    report.singular_values = sv;

    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    const double tol = std::max(sys.G.rows(), sys.G.cols()) *
                       std::numeric_limits<double>::epsilon() * smax;
    report.rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol) ++report.rank;
    }
    const double smin = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
    report.condition =
        smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

    if (report.rank < sys.G.cols()) {
        std::string msg = "check_rank: G is rank-deficient (rank " +
                          std::to_string(report.rank) + " of " +
                          std::to_string(sys.G.cols()) + "); smallest singular values:";
        const Eigen::Index show = std::min<Eigen::Index>(3, sv.size());
        for (Eigen::Index i = sv.size() - show; i < sv.size(); ++i) {
            msg += " " + std::to_string(sv[i]);
        }
        throw RankError(msg);
    }
    return report;
}

}  // namespace wendy
