#include "wendy/models.hpp"

#include <cmath>

#include "wendy/errors.hpp"

namespace wendy {

Eigen::VectorXd ModelSpec::active_values(const Eigen::MatrixXd& W) const {
    Eigen::VectorXd w(param_count());
    for (int p = 0; p < param_count(); ++p) {
        w[p] = W(active[p].first, active[p].second);
    }
    return w;
}

std::vector<int> ModelSpec::active_vec_indices() const {
    std::vector<int> idx(active.size());
    for (size_t p = 0; p < active.size(); ++p) {
        idx[p] = active[p].second * J + active[p].first;
    }
    return idx;
}

Eigen::MatrixXd ModelSpec::params_from_active(const Eigen::VectorXd& w) const {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(J, d);
    for (int p = 0; p < param_count(); ++p) {
        W(active[p].first, active[p].second) = w[p];
    }
    return W;
}

std::vector<std::string> ModelSpec::param_names() const {
    std::vector<std::string> names(active.size());
    for (size_t p = 0; p < active.size(); ++p) {
        names[p] = "w" + std::to_string(p + 1);
    }
    return names;
}

namespace {

ModelSpec make_logistic() {
    ModelSpec m;
    m.name = "logistic";
    m.d = 1;
    m.J = 2;
    // theta = (u, u^2)
    m.features = [](const Eigen::VectorXd& u) {
        Eigen::RowVectorXd th(2);
        th << u[0], u[0] * u[0];
        return th;
    };
    m.feature_gradients = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd D(2, 1);
        D << 1.0, 2.0 * u[0];
        return D;
    };
    m.true_params.resize(2, 1);
    m.true_params << 1.0, -1.0;
    m.active = {{0, 0}, {1, 0}};
    m.u0.resize(1);
    m.u0 << 0.01;
    m.default_T = 10.0;
    m.default_points = 103;
    m.nonneg_states = true;
    return m;
}

ModelSpec make_lotka_volterra() {
    ModelSpec m;
    m.name = "lotka_volterra";
    m.d = 2;
    m.J = 3;
    // theta = (u1, u2, u1*u2)
    m.features = [](const Eigen::VectorXd& u) {
        Eigen::RowVectorXd th(3);
        th << u[0], u[1], u[0] * u[1];
        return th;
    };
    m.feature_gradients = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd D(3, 2);
        D << 1.0, 0.0,
             0.0, 1.0,
             u[1], u[0];
        return D;
    };
    m.true_params = Eigen::MatrixXd::Zero(3, 2);
    m.true_params(0, 0) = 3.0;   // w1 u1
    m.true_params(2, 0) = -1.0;  // w2 u1 u2
    m.true_params(1, 1) = -6.0;  // w3 u2
    m.true_params(2, 1) = 1.0;   // w4 u1 u2
    m.active = {{0, 0}, {2, 0}, {1, 1}, {2, 1}};
    m.u0.resize(2);
    m.u0 << 1.0, 1.0;
    m.default_T = 5.0;
    m.default_points = 205;
    m.nonneg_states = true;
    return m;
}

ModelSpec make_fitzhugh_nagumo() {
    ModelSpec m;
    m.name = "fitzhugh_nagumo";
    m.d = 2;
    m.J = 4;
    // theta = (u1, u1^3, u2, 1)
    m.features = [](const Eigen::VectorXd& u) {
        Eigen::RowVectorXd th(4);
        th << u[0], u[0] * u[0] * u[0], u[1], 1.0;
        return th;
    };
    m.feature_gradients = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 2);
        D(0, 0) = 1.0;
        D(1, 0) = 3.0 * u[0] * u[0];
        D(2, 1) = 1.0;
        return D;
    };
    m.true_params = Eigen::MatrixXd::Zero(4, 2);
    m.true_params(0, 0) = 3.0;               // w1 u1
    m.true_params(1, 0) = -3.0;              // w2 u1^3
    m.true_params(2, 0) = 3.0;               // w3 u2
    m.true_params(0, 1) = -1.0 / 3.0;        // w4 u1
    m.true_params(3, 1) = 17.0 / 150.0;      // w5 * 1
    m.true_params(2, 1) = 1.0 / 15.0;        // w6 u2
    m.active = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 1}, {2, 1}};
    m.u0.resize(2);
    m.u0 << 0.0, 0.1;
    m.default_T = 25.0;
    m.default_points = 205;
    m.nonneg_states = false;
    return m;
}

ModelSpec make_hindmarsh_rose() {
    ModelSpec m;
    m.name = "hindmarsh_rose";
    m.d = 3;
    m.J = 6;
    // theta = (u2, u1^3, u1^2, u3, 1, u1)
    m.features = [](const Eigen::VectorXd& u) {
        Eigen::RowVectorXd th(6);
        th << u[1], u[0] * u[0] * u[0], u[0] * u[0], u[2], 1.0, u[0];
        return th;
    };
    m.feature_gradients = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(6, 3);
        D(0, 1) = 1.0;
        D(1, 0) = 3.0 * u[0] * u[0];
        D(2, 0) = 2.0 * u[0];
        D(3, 2) = 1.0;
        D(5, 0) = 1.0;
        return D;
    };
    m.true_params = Eigen::MatrixXd::Zero(6, 3);
    m.true_params(0, 0) = 10.0;    // w1 u2
    m.true_params(1, 0) = -10.0;   // w2 u1^3
    m.true_params(2, 0) = 30.0;    // w3 u1^2
    m.true_params(3, 0) = -10.0;   // w4 u3
    m.true_params(4, 1) = 10.0;    // w5 * 1
    m.true_params(2, 1) = -50.0;   // w6 u1^2
    m.true_params(0, 1) = -10.0;   // w7 u2
    m.true_params(5, 2) = 0.04;    // w8 u1
    m.true_params(4, 2) = 0.0319;  // w9 * 1
    m.true_params(3, 2) = -0.01;   // w10 u3
    m.active = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 1},
                {2, 1}, {0, 1}, {5, 2}, {4, 2}, {3, 2}};
    m.u0.resize(3);
    m.u0 << -1.31, -7.6, -0.2;
    // 205 points resolve exactly one burst spike on this horizon; longer
    // horizons leave the spikes undersampled at the default resolution.
    m.default_T = 5.5;
    m.default_points = 205;
    m.nonneg_states = false;
    return m;
}

constexpr double kPtbMichaelis = 0.3;

ModelSpec make_ptb() {
    ModelSpec m;
    m.name = "ptb";
    m.d = 5;
    m.J = 4;
    // theta = (u1, u1*u3, u4, u5/(0.3+u5))
    m.features = [](const Eigen::VectorXd& u) {
        Eigen::RowVectorXd th(4);
        th << u[0], u[0] * u[2], u[3], u[4] / (kPtbMichaelis + u[4]);
        return th;
    };
    m.feature_gradients = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 5);
        D(0, 0) = 1.0;
        D(1, 0) = u[2];
        D(1, 2) = u[0];
        D(2, 3) = 1.0;
        const double den = kPtbMichaelis + u[4];
        D(3, 4) = kPtbMichaelis / (den * den);
        return D;
    };
    m.true_params = Eigen::MatrixXd::Zero(4, 5);
    m.true_params(0, 0) = -0.07;   // w1 u1
    m.true_params(1, 0) = -0.6;    // w2 u1 u3
    m.true_params(2, 0) = 0.35;    // w3 u4
    m.true_params(0, 1) = 0.07;    // w4 u1
    m.true_params(1, 2) = -0.6;    // w5 u1 u3
    m.true_params(2, 2) = 0.05;    // w6 u4
    m.true_params(3, 2) = 0.17;    // w7 u5/(0.3+u5)
    m.true_params(1, 3) = 0.6;     // w8 u1 u3
    m.true_params(2, 3) = -0.35;   // w9 u4
    m.true_params(2, 4) = 0.3;     // w10 u4
    m.true_params(3, 4) = -0.017;  // w11 u5/(0.3+u5)
    m.active = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 2}, {2, 2},
                {3, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
    m.u0.resize(5);
    m.u0 << 1.0, 0.0, 1.0, 0.0, 1.0;
    m.default_T = 25.0;
    m.default_points = 205;
    m.nonneg_states = true;
    return m;
}

}  // namespace

ModelSpec get_benchmark(const std::string& name) {
    if (name == "logistic") return make_logistic();
    if (name == "lotka_volterra" || name == "lv") return make_lotka_volterra();
    if (name == "fitzhugh_nagumo" || name == "fhn") return make_fitzhugh_nagumo();
    if (name == "hindmarsh_rose" || name == "hmr") return make_hindmarsh_rose();
    if (name == "ptb") return make_ptb();
    std::string msg = "unknown model '" + name + "'; valid models:";
    for (const auto& n : benchmark_names()) msg += " " + n;
    throw ConfigError(msg);
}

std::vector<std::string> benchmark_names() {
    return {"logistic", "lotka_volterra", "fitzhugh_nagumo", "hindmarsh_rose", "ptb"};
}

Eigen::MatrixXd eval_features(const ModelSpec& model, const Eigen::MatrixXd& U) {
    if (U.cols() != model.d) {
        throw ConfigError("eval_features: U has " + std::to_string(U.cols()) +
                          " columns, model '" + model.name + "' has d=" +
                          std::to_string(model.d));
    }
    Eigen::MatrixXd theta(U.rows(), model.J);
    for (Eigen::Index mrow = 0; mrow < U.rows(); ++mrow) {
        const Eigen::RowVectorXd th = model.features(U.row(mrow).transpose());
        for (int j = 0; j < model.J; ++j) {
            if (!std::isfinite(th[j])) {
                throw EvaluationError("non-finite feature " + std::to_string(j) +
                                      " of model '" + model.name + "' at row " +
                                      std::to_string(mrow));
            }
        }
        theta.row(mrow) = th;
    }
    return theta;
}

Eigen::VectorXd rhs(const ModelSpec& model, const Eigen::VectorXd& u,
                    const Eigen::MatrixXd& W) {
    const Eigen::RowVectorXd th = model.features(u);
    if (!th.allFinite()) {
        throw EvaluationError("non-finite feature value in model '" + model.name + "'");
    }
    return (th * W).transpose();
}

Eigen::MatrixXd feature_state_jacobian(const ModelSpec& model, const Eigen::VectorXd& u,
                                       const Eigen::MatrixXd& W) {
    // d(theta W)/du = W^T * (d theta/du)
    return W.transpose() * model.feature_gradients(u);
}

}  // namespace wendy
