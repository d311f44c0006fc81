#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wendy {

/// An ODE system in the linear-in-parameters form du/dt = theta(u) * W,
/// where theta(u) is a row of J feature values shared by all d equations and
/// W is J x d with a zero wherever a feature is absent from an equation.
///
/// `active` lists the (feature, state) positions of the free parameters in
/// the conventional w1..wP reporting order; flat parameter vectors used for
/// coverage and bias follow this order.
struct ModelSpec {
    std::string name;
    int d = 0;  // state count
    int J = 0;  // feature count

    /// theta(u): row vector of J feature values.
    std::function<Eigen::RowVectorXd(const Eigen::VectorXd&)> features;

    /// d theta / du: J x d matrix of feature gradients at u.
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> feature_gradients;

    Eigen::MatrixXd true_params;  // J x d
    std::vector<std::pair<int, int>> active;
    Eigen::VectorXd u0;
    double default_T = 0.0;
    int default_points = 0;  // M+1
    bool nonneg_states = false;

    int param_count() const { return static_cast<int>(active.size()); }

    /// Flat vector of the active entries of W in w1..wP order.
    Eigen::VectorXd active_values(const Eigen::MatrixXd& W) const;

    /// Column-major indices of the active entries within vec(W).
    std::vector<int> active_vec_indices() const;

    /// Scatters a flat active vector into a J x d matrix (inactive = 0).
    Eigen::MatrixXd params_from_active(const Eigen::VectorXd& w) const;

    std::vector<std::string> param_names() const;
};

/// Benchmark registry. Names: logistic, lotka_volterra, fitzhugh_nagumo,
/// hindmarsh_rose, ptb. Throws ConfigError for anything else.
ModelSpec get_benchmark(const std::string& name);

std::vector<std::string> benchmark_names();

/// Feature matrix Theta(U): row m holds theta(U.row(m)). Throws
/// EvaluationError naming the row and feature if a value is non-finite.
Eigen::MatrixXd eval_features(const ModelSpec& model, const Eigen::MatrixXd& U);

/// Right-hand side theta(u) * W as a d-vector.
Eigen::VectorXd rhs(const ModelSpec& model, const Eigen::VectorXd& u,
                    const Eigen::MatrixXd& W);

/// d/du of the map u -> theta(u) W, as a d x d matrix (row i = equation i).
Eigen::MatrixXd feature_state_jacobian(const ModelSpec& model, const Eigen::VectorXd& u,
                                       const Eigen::MatrixXd& W);

}  // namespace wendy
