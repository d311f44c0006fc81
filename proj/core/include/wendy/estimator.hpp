#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wendy/grid.hpp"
#include "wendy/models.hpp"
#include "wendy/weakform.hpp"

namespace wendy {

struct FitConfig {
    int center_count = 0;  // 0 -> one bump per admissible interior grid point
    int radius_mult = 0;   // 0 -> max(2, points/16)
    double eta = 9.0;
    double tol = 1e-6;
    int max_iter = 100;
    double ridge = 1e-10;   // relative diagonal inflation of C
    int filter_order = 14;  // variance filter: differences of this order
    double ci_level = 0.95;
};

enum class FitFailure {
    None,
    SingularCovariance,  // iteration fell back to the previous parameter iterate
};

/// Everything the weak-form fit produces: the full parameter matrix, the flat
/// active-parameter vector with its covariance and standard errors, the
/// residual covariance of the final iteration, and convergence diagnostics.
struct WendyFit {
    Eigen::MatrixXd W;       // J x d
    Eigen::VectorXd active;  // P, paper order
    Eigen::MatrixXd C;       // Kd x Kd residual covariance at the final W
    Eigen::MatrixXd S;       // P x P parameter covariance
    Eigen::VectorXd ses;     // P
    double sigma2 = 0.0;
    int iterations = 0;
    bool converged = false;
    FitFailure failure = FitFailure::None;
    bool ses_clamped = false;  // a roundoff-negative variance was clamped to 0
    double condition = 0.0;    // condition number of G

    bool usable() const { return active.allFinite() && ses.allFinite(); }
};

/// Stacked design of the active parameters: column p of the Kd x P matrix
/// places G's column feat(p) in the block row of state(p). Parameters absent
/// from an equation stay structurally zero rather than being estimated.
Eigen::MatrixXd active_design(const ModelSpec& model, const WeakSystem& sys);

/// Ordinary least squares over the active parameters,
/// argmin ||vec(G W - B)||_2 subject to the model's sparsity pattern, solved
/// by Householder QR (equals the normal equations for full-rank G). Returns
/// the J x d matrix with zeros at inactive positions.
Eigen::MatrixXd ols_solve(const ModelSpec& model, const WeakSystem& sys);

/// Generalized least squares against a residual covariance: whitens the
/// stacked system by the Cholesky factor of C and solves. C = identity
/// reproduces ols_solve exactly.
Eigen::MatrixXd gls_solve(const ModelSpec& model, const WeakSystem& sys,
                          const Eigen::MatrixXd& C);

/// First-order covariance of vec(G W - B) under unit-variance i.i.d. additive
/// measurement noise: C = L L^T with block (i,l) of L equal to
/// Phi Q diag_m(d[theta(u_m) W]_i / du_l) + delta_il PhiDot Q.
/// Symmetrized, diagonal inflated by `ridge` relatively.
Eigen::MatrixXd residual_covariance(const ModelSpec& model, const Eigen::MatrixXd& U,
                                    const Eigen::MatrixXd& W,
                                    const TestFunctionBasis& basis,
                                    const Eigen::VectorXd& q, double ridge = 1e-10);

struct IrlsResult {
    Eigen::MatrixXd W;
    Eigen::MatrixXd C;  // covariance at the final W
    int iterations = 0;
    bool converged = false;
    FitFailure failure = FitFailure::None;
};

/// Iteratively reweighted least squares on the stacked system
/// (I_d kron G) vec(W) = vec(B): starts from OLS, reweights by the residual
/// covariance of the current iterate, stops on relative change < tol.
IrlsResult irls(const ModelSpec& model, const Eigen::MatrixXd& U,
                const TestFunctionBasis& basis, const Eigen::VectorXd& q,
                const WeakSystem& sys, double tol = 1e-6, int max_iter = 100,
                double ridge = 1e-10);

/// Pooled measurement-variance estimate: each state column is convolved
/// (valid mode) with a unit-l2-norm difference filter of the given order,
/// which annihilates polynomial trends up to that degree minus one; the mean
/// square of the filtered values estimates the per-entry noise variance.
double estimate_measurement_variance(const Eigen::MatrixXd& U, int filter_order = 14);

struct ParameterCovariance {
    Eigen::MatrixXd S;    // P x P, active order
    Eigen::VectorXd ses;  // sqrt(diag(S)), negatives clamped to 0
    bool clamped = false;
};

/// Sandwich covariance sigma2 * ((A'A)^-1 A') C (A (A'A)^-1) with A the
/// stacked active design; ses in reporting order.
ParameterCovariance parameter_covariance(const ModelSpec& model, const WeakSystem& sys,
                                         const Eigen::MatrixXd& C, double sigma2);

/// Central intervals w_i -+ z * se_i with z the normal quantile at
/// (1 + level)/2.
std::vector<std::pair<double, double>> confidence_intervals(const Eigen::VectorXd& ws,
                                                            const Eigen::VectorXd& ses,
                                                            double level);

/// Full pipeline: basis -> assembly -> rank check -> IRLS -> variance
/// estimate -> parameter covariance. Configuration and evaluation errors
/// propagate as exceptions; a returned fit may still be non-converged or
/// carry a fallback flag.
WendyFit fit(const ModelSpec& model, const StateGrid& data, const FitConfig& cfg = {});

}  // namespace wendy
