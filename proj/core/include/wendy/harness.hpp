#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wendy/estimator.hpp"
#include "wendy/grid.hpp"
#include "wendy/models.hpp"
#include "wendy/noise.hpp"

namespace wendy {

struct ExperimentConfig {
    std::string model = "logistic";
    NoiseKind kind = NoiseKind::AdditiveNormal;
    double gamma = 0.05;                 // level for single runs/resolution sweeps
    std::vector<double> gamma_schedule;  // noise sweep; empty -> per-model default
    std::vector<int> points_schedule;    // resolution sweep; empty -> default
    int points = 0;      // M+1; 0 -> model default
    double horizon = 0;  // T; 0 -> model default
    int replicates = 200;
    std::uint64_t base_seed = 1;
    int substeps = 20;
    int threads = 1;
    bool mln_squared = false;  // MLN calibration against (r*gamma)^2
    FitConfig fit;
};

/// Aggregates of one Monte Carlo level: per-parameter coverage, bias and
/// relative bias over the successful fits, the raw estimate/SE samples, and
/// full failure accounting (successes + failures = replicates).
struct LevelResult {
    std::string level_kind;  // "noise" | "resolution" | "single"
    double level_value = 0.0;
    double gamma = 0.0;
    int points = 0;
    Eigen::VectorXd coverage;  // P
    Eigen::VectorXd bias;      // P
    Eigen::VectorXd rel_bias;  // P, NaN where w* = 0
    Eigen::MatrixXd estimates;  // n_success x P
    Eigen::MatrixXd ses;        // n_success x P
    std::vector<int> replicate_ids;          // row -> replicate index
    std::vector<std::string> failure_reasons;  // one entry per failed replicate
    int n_success = 0;
    int n_fail = 0;
    double mean_noise_ratio = 0.0;  // empirical, averaged over replicates
    bool valid = true;
    std::string invalid_reason;
};

struct SweepResult {
    std::vector<LevelResult> levels;
    std::string stop_reason;
};

/// Algorithm-2 indicator: 1 iff w_i - 1.96 se_i <= w*_i <= w_i + 1.96 se_i.
Eigen::VectorXi coverage_indicator(const Eigen::VectorXd& w_star,
                                   const Eigen::VectorXd& w,
                                   const Eigen::VectorXd& ses);

/// bias_i = w*_i - mean(estimates[:, i]); rel_bias_i = bias_i / w*_i
/// (NaN marker where w*_i = 0).
std::pair<Eigen::VectorXd, Eigen::VectorXd> bias_stats(const Eigen::VectorXd& w_star,
                                                       const Eigen::MatrixXd& estimates);

/// One Monte Carlo level: truth generated once, per-replicate noise streams,
/// fits recorded or counted as failures (never silently dropped). More than
/// 50% failures marks the level invalid.
LevelResult run_level(const ExperimentConfig& cfg, const std::string& level_kind,
                      double gamma, int points);

/// Increasing noise levels; stops after the first level where some
/// parameter's coverage drops below 50%, or once gamma reaches 0.9.
SweepResult noise_sweep(const ExperimentConfig& cfg);

/// Fixed noise level, varying grid size.
SweepResult resolution_sweep(const ExperimentConfig& cfg);

std::vector<double> default_gamma_schedule(const std::string& model, NoiseKind kind);
std::vector<int> default_points_schedule(const std::string& model);

/// Parametric bootstrap: parameter draws from N(active, S) via the
/// eigendecomposition of S, each forward-solved on the fit's grid. Divergent
/// draws are flagged and keep an empty trajectory slot.
struct BootstrapCloud {
    StateGrid central;
    std::vector<StateGrid> samples;
    std::vector<char> divergent;
    Eigen::MatrixXd draws;  // n_samples x P
};

BootstrapCloud bootstrap_cloud(const WendyFit& fit, const ModelSpec& model,
                               const Eigen::VectorXd& u0, double t0, double T,
                               int segments, int substeps, int n_samples,
                               std::uint64_t seed);

struct StateHistogram {
    int time_index = 0;
    int state = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<int> counts;
};

/// Fixed-width binned counts of the cloud's states at the selected times;
/// counts at each (time, state) sum to the number of finite samples.
std::vector<StateHistogram> state_histograms(const BootstrapCloud& cloud,
                                             const std::vector<int>& time_indices,
                                             int bins = 30);

}  // namespace wendy
