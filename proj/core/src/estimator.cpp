#include "wendy/estimator.hpp"

#include <cmath>
#include <string>

#include "wendy/errors.hpp"
#include "wendy/rng.hpp"

namespace wendy {

Eigen::MatrixXd active_design(const ModelSpec& model, const WeakSystem& sys) {
    const int K = static_cast<int>(sys.G.rows());
    const int P = model.param_count();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K * model.d, P);
    for (int p = 0; p < P; ++p) {
        const auto [feat, state] = model.active[p];
        A.col(p).segment(state * K, K) = sys.G.col(feat);
    }
    return A;
}

Eigen::MatrixXd ols_solve(const ModelSpec& model, const WeakSystem& sys) {
    const Eigen::MatrixXd A = active_design(model, sys);
    const Eigen::Map<const Eigen::VectorXd> b(sys.B.data(), sys.B.size());
    const Eigen::VectorXd w = A.householderQr().solve(b);
    return model.params_from_active(w);
}

Eigen::MatrixXd gls_solve(const ModelSpec& model, const WeakSystem& sys,
                          const Eigen::MatrixXd& C) {
    const Eigen::MatrixXd A = active_design(model, sys);
    const Eigen::Map<const Eigen::VectorXd> b(sys.B.data(), sys.B.size());
    Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success) {
        throw FactorizationError("gls_solve: covariance is not positive definite",
                                 std::numeric_limits<double>::quiet_NaN());
    }
    const Eigen::MatrixXd a_white = llt.matrixL().solve(A);
    const Eigen::VectorXd b_white = llt.matrixL().solve(b);
    return model.params_from_active(a_white.householderQr().solve(b_white));
}

Eigen::MatrixXd residual_covariance(const ModelSpec& model, const Eigen::MatrixXd& U,
                                    const Eigen::MatrixXd& W,
                                    const TestFunctionBasis& basis,
                                    const Eigen::VectorXd& q, double ridge) {
    const int K = basis.count();
    const int n = static_cast<int>(U.rows());
    const int d = model.d;
    if (!W.allFinite()) {
        throw EvaluationError("residual_covariance: non-finite parameter matrix");
    }

    const Eigen::MatrixXd phi_q = basis.phi * q.asDiagonal();
    const Eigen::MatrixXd phi_dot_q = basis.phi_dot * q.asDiagonal();

    Eigen::MatrixXd L(K * d, n * d);
    for (int m = 0; m < n; ++m) {
        const Eigen::MatrixXd jac =
            W.transpose() * model.feature_gradients(U.row(m).transpose());
        if (!jac.allFinite()) {
            throw EvaluationError("residual_covariance: non-finite state Jacobian at row " +
                                  std::to_string(m));
        }
        for (int l = 0; l < d; ++l) {
            for (int i = 0; i < d; ++i) {
                L.col(l * n + m).segment(i * K, K) = phi_q.col(m) * jac(i, l);
            }
            L.col(l * n + m).segment(l * K, K) += phi_dot_q.col(m);
        }
    }

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(K * d, K * d);
    C.selfadjointView<Eigen::Lower>().rankUpdate(L);
    C = C.selfadjointView<Eigen::Lower>();
    C.diagonal() *= (1.0 + ridge);
    return C;
}

IrlsResult irls(const ModelSpec& model, const Eigen::MatrixXd& U,
                const TestFunctionBasis& basis, const Eigen::VectorXd& q,
                const WeakSystem& sys, double tol, int max_iter, double ridge) {
    IrlsResult result;
    result.W = ols_solve(model, sys);

    const Eigen::MatrixXd A = active_design(model, sys);
    const Eigen::Map<const Eigen::VectorXd> b(sys.B.data(), sys.B.size());
    Eigen::VectorXd w = model.active_values(result.W);

    Eigen::MatrixXd C;
    for (result.iterations = 1; result.iterations <= max_iter; ++result.iterations) {
        C = residual_covariance(model, U, result.W, basis, q, ridge);
        Eigen::LLT<Eigen::MatrixXd> llt(C);
        if (llt.info() != Eigen::Success) {
            // Keep the previous iterate; flag the fallback.
            result.failure = FitFailure::SingularCovariance;
            result.converged = false;
            result.C = C;
            return result;
        }
        const Eigen::MatrixXd a_white = llt.matrixL().solve(A);
        const Eigen::VectorXd b_white = llt.matrixL().solve(b);
        const Eigen::VectorXd w_next = a_white.householderQr().solve(b_white);

        const double rel = (w_next - w).norm() / std::max(w.norm(), 1e-300);
        w = w_next;
        result.W = model.params_from_active(w);
        if (rel < tol) {
            result.converged = true;
            break;
        }
    }
    if (result.iterations > max_iter) result.iterations = max_iter;

    result.C = residual_covariance(model, U, result.W, basis, q, ridge);
    return result;
}

double estimate_measurement_variance(const Eigen::MatrixXd& U, int filter_order) {
    if (filter_order < 1) {
        throw ConfigError("estimate_measurement_variance: filter order must be >= 1");
    }
    const int len = filter_order + 1;
    if (U.rows() < len) {
        throw ConfigError("estimate_measurement_variance: grid of " +
                          std::to_string(U.rows()) + " points is shorter than the " +
                          std::to_string(len) + "-tap filter");
    }
    // Alternating binomial coefficients: the order-n difference stencil.
    Eigen::VectorXd f(len);
    f[0] = 1.0;
    for (int k = 0; k < filter_order; ++k) {
        f[k + 1] = -f[k] * static_cast<double>(filter_order - k) / (k + 1);
    }
    f /= f.norm();

    const int nv = static_cast<int>(U.rows()) - filter_order;
    double total = 0.0;
    for (int i = 0; i < U.cols(); ++i) {
        for (int t = 0; t < nv; ++t) {
            total += std::pow(f.dot(U.col(i).segment(t, len)), 2);
        }
    }
    return total / (static_cast<double>(U.cols()) * nv);
}

ParameterCovariance parameter_covariance(const ModelSpec& model, const WeakSystem& sys,
                                         const Eigen::MatrixXd& C, double sigma2) {
    const int P = model.param_count();
    const Eigen::MatrixXd A = active_design(model, sys);

    // (A'A)^-1 A' as the least-squares pseudoinverse of the stacked design.
    const Eigen::MatrixXd pinv =
        A.householderQr().solve(Eigen::MatrixXd::Identity(A.rows(), A.rows()));

    ParameterCovariance out;
    out.S = sigma2 * pinv * C * pinv.transpose();
    out.ses.resize(P);
    for (int p = 0; p < P; ++p) {
        const double v = out.S(p, p);
        if (v < 0.0) out.clamped = true;
        out.ses[p] = std::sqrt(std::max(v, 0.0));
    }
    return out;
}

std::vector<std::pair<double, double>> confidence_intervals(const Eigen::VectorXd& ws,
                                                            const Eigen::VectorXd& ses,
                                                            double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw ConfigError("confidence_intervals: level must lie in (0, 1)");
    }
    if (ws.size() != ses.size()) {
        throw ConfigError("confidence_intervals: length mismatch");
    }
    const double z = normal_quantile(0.5 * (1.0 + level));
    std::vector<std::pair<double, double>> out(ws.size());
    for (Eigen::Index i = 0; i < ws.size(); ++i) {
        out[i] = {ws[i] - z * ses[i], ws[i] + z * ses[i]};
    }
    return out;
}

WendyFit fit(const ModelSpec& model, const StateGrid& data, const FitConfig& cfg) {
    if (data.dim() != model.d) {
        throw ConfigError("fit: data has " + std::to_string(data.dim()) +
                          " states, model '" + model.name + "' has " +
                          std::to_string(model.d));
    }
    const int points = data.points();
    const int mt = cfg.radius_mult > 0 ? cfg.radius_mult : default_radius_mult(points);
    const int K =
        cfg.center_count > 0 ? cfg.center_count : default_center_count(points, mt);

    const TestFunctionBasis basis = build_basis(data, K, mt, cfg.eta);
    const Eigen::VectorXd q = quadrature_weights(data.segments(), data.dt);
    const Eigen::MatrixXd theta = eval_features(model, data.states);
    const WeakSystem sys = assemble(basis, q, theta, data.states);
    const RankReport rank = check_rank(sys);

    const IrlsResult ir =
        irls(model, data.states, basis, q, sys, cfg.tol, cfg.max_iter, cfg.ridge);

    WendyFit out;
    out.W = ir.W;
    out.active = model.active_values(ir.W);
    out.C = ir.C;
    out.iterations = ir.iterations;
    out.converged = ir.converged;
    out.failure = ir.failure;
    out.condition = rank.condition;
    out.sigma2 = estimate_measurement_variance(data.states, cfg.filter_order);

    const ParameterCovariance pc = parameter_covariance(model, sys, ir.C, out.sigma2);
    out.S = pc.S;
    out.ses = pc.ses;
    out.ses_clamped = pc.clamped;
    return out;
}

}  // namespace wendy
