#pragma once

#include <Eigen/Dense>

#include "wendy/grid.hpp"

namespace wendy {

/// C-infinity bump test functions on the grid: K rows of phi and of its exact
/// analytic derivative. Each bump is exp(-eta s^2 / (1 - s^2)) for
/// s = (t - center)/radius inside |s| < 1, zero outside, so every phi
/// vanishes at (and beyond) its support edge and has unit maximum.
struct TestFunctionBasis {
    Eigen::VectorXd centers;   // K
    double radius = 0.0;       // support half-width (= radius_mult * dt)
    int radius_mult = 0;
    double eta = 9.0;
    Eigen::MatrixXd phi;       // K x (M+1)
    Eigen::MatrixXd phi_dot;   // K x (M+1)

    int count() const { return static_cast<int>(phi.rows()); }
};

/// Trapezoid weights diag(dt/2, dt, ..., dt, dt/2), returned as the diagonal.
Eigen::VectorXd quadrature_weights(int segments, double dt);

int default_radius_mult(int points);
int default_center_count(int points, int radius_mult);

/// Builds K bumps with half-width radius_mult*dt, centers uniformly spaced
/// over [t0 + radius, T - radius]. With the default K every interior grid
/// point that can carry a full support gets a center.
TestFunctionBasis build_basis(const StateGrid& grid, int K, int radius_mult,
                              double eta = 9.0);

/// The weak-form regression pair G = Phi Q Theta(U), B = -PhiDot Q U.
struct WeakSystem {
    Eigen::MatrixXd G;  // K x J
    Eigen::MatrixXd B;  // K x d
    Eigen::VectorXd q;  // quadrature diagonal, M+1
};

WeakSystem assemble(const TestFunctionBasis& basis, const Eigen::VectorXd& q,
                    const Eigen::MatrixXd& theta, const Eigen::MatrixXd& U);

struct RankReport {
    int rank = 0;
    double condition = 0.0;
    Eigen::VectorXd singular_values;
};

/// Singular-value rank check of G at tolerance max(K,J)*eps*sigma_max.
/// Throws RankError (naming the trailing singular values) if rank < J.
RankReport check_rank(const WeakSystem& sys);

}  // namespace wendy
