#include "wendy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wendy/errors.hpp"
#include "wendy/rng.hpp"
#include "wendy/simulate.hpp"

namespace wendy {

Eigen::VectorXi coverage_indicator(const Eigen::VectorXd& w_star,
                                   const Eigen::VectorXd& w,
                                   const Eigen::VectorXd& ses) {
    if (w_star.size() != w.size() || w.size() != ses.size()) {
        throw ConfigError("coverage_indicator: length mismatch");
    }
    Eigen::VectorXi c = Eigen::VectorXi::Zero(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double lo = w[i] - 1.96 * ses[i];
        const double hi = w[i] + 1.96 * ses[i];
        if (lo <= w_star[i] && w_star[i] <= hi) c[i] = 1;
    }
    return c;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bias_stats(const Eigen::VectorXd& w_star,
                                                       const Eigen::MatrixXd& estimates) {
    if (estimates.rows() < 1 || estimates.cols() != w_star.size()) {
        throw ConfigError("bias_stats: need >= 1 replicate row per parameter");
    }
    const Eigen::VectorXd mean = estimates.colwise().mean();
    Eigen::VectorXd bias = w_star - mean;
    Eigen::VectorXd rel(bias.size());
    for (Eigen::Index i = 0; i < bias.size(); ++i) {
        rel[i] = w_star[i] != 0.0 ? bias[i] / w_star[i]
                                  : std::numeric_limits<double>::quiet_NaN();
    }
    return {bias, rel};
}

namespace {

struct ReplicateOutcome {
    bool ok = false;
    Eigen::VectorXd estimate;
    Eigen::VectorXd ses;
    double noise_ratio = std::numeric_limits<double>::quiet_NaN();
    std::string failure;
};

ReplicateOutcome run_replicate(const ModelSpec& model, const StateGrid& truth,
                               const NoiseConfig& noise, const FitConfig& fit_cfg) {
    ReplicateOutcome out;
    try {
        const StateGrid data = add_noise(truth, noise);
        out.noise_ratio = empirical_noise_ratio(truth, data);
        const WendyFit f = fit(model, data, fit_cfg);
        if (!f.usable()) {
            out.failure = "non-finite estimate or standard error";
            return out;
        }
        out.ok = true;
        out.estimate = f.active;
        out.ses = f.ses;
    } catch (const std::exception& e) {
        out.failure = e.what();
    }
    return out;
}

}  // namespace

LevelResult run_level(const ExperimentConfig& cfg, const std::string& level_kind,
                      double gamma, int points) {
    const ModelSpec model = get_benchmark(cfg.model);
    const double T = cfg.horizon > 0 ? cfg.horizon : model.default_T;
    if (points <= 0) points = model.default_points;

    LevelResult level;
    level.level_kind = level_kind;
    level.level_value = level_kind == "resolution" ? points : gamma;
    level.gamma = gamma;
    level.points = points;

    const int P = model.param_count();
    level.coverage = Eigen::VectorXd::Zero(P);
    level.bias = Eigen::VectorXd::Zero(P);
    level.rel_bias = Eigen::VectorXd::Zero(P);

    StateGrid truth;
    NoiseConfig noise;
    try {
        truth = integrate(model, model.true_params, model.u0, 0.0, T, points - 1,
                          cfg.substeps);
        noise.kind = cfg.kind;
        noise.gamma = gamma;
        noise.sigmas = calibrate_sigma(cfg.kind, truth, gamma, cfg.mln_squared);
    } catch (const std::exception& e) {
        level.n_fail = cfg.replicates;
        level.failure_reasons.assign(cfg.replicates, e.what());
        level.valid = false;
        level.invalid_reason = e.what();
        return level;
    }

    std::vector<ReplicateOutcome> outcomes(cfg.replicates);
    const int workers = std::max(1, std::min(cfg.threads, cfg.replicates));
    if (workers == 1) {
        for (int r = 0; r < cfg.replicates; ++r) {
            NoiseConfig nc = noise;
            nc.seed = stream_seed(cfg.base_seed, static_cast<std::uint64_t>(r));
            outcomes[r] = run_replicate(model, truth, nc, cfg.fit);
        }
    } else {
        std::atomic<int> next{0};
        auto work = [&]() {
            for (int r = next.fetch_add(1); r < cfg.replicates; r = next.fetch_add(1)) {
                NoiseConfig nc = noise;
                nc.seed = stream_seed(cfg.base_seed, static_cast<std::uint64_t>(r));
                outcomes[r] = run_replicate(model, truth, nc, cfg.fit);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Reduce in replicate order so results do not depend on scheduling.
    const Eigen::VectorXd w_star = model.active_values(model.true_params);
    std::vector<int> ok_rows;
    double nr_sum = 0.0;
    int nr_count = 0;
    for (int r = 0; r < cfg.replicates; ++r) {
        if (std::isfinite(outcomes[r].noise_ratio)) {
            nr_sum += outcomes[r].noise_ratio;
            ++nr_count;
        }
        if (outcomes[r].ok) {
            ok_rows.push_back(r);
        } else {
            ++level.n_fail;
            level.failure_reasons.push_back(outcomes[r].failure);
        }
    }
    level.n_success = static_cast<int>(ok_rows.size());
    level.mean_noise_ratio = nr_count > 0 ? nr_sum / nr_count
                                          : std::numeric_limits<double>::quiet_NaN();

    level.estimates.resize(level.n_success, P);
    level.ses.resize(level.n_success, P);
    level.replicate_ids.resize(ok_rows.size());
    Eigen::VectorXd covered = Eigen::VectorXd::Zero(P);
    for (size_t row = 0; row < ok_rows.size(); ++row) {
        const ReplicateOutcome& o = outcomes[ok_rows[row]];
        level.estimates.row(static_cast<Eigen::Index>(row)) = o.estimate.transpose();
        level.ses.row(static_cast<Eigen::Index>(row)) = o.ses.transpose();
        level.replicate_ids[row] = ok_rows[row];
        covered += coverage_indicator(w_star, o.estimate, o.ses).cast<double>();
    }
    if (level.n_success > 0) {
        level.coverage = covered / level.n_success;
        std::tie(level.bias, level.rel_bias) = bias_stats(w_star, level.estimates);
    }

    if (2 * level.n_fail > cfg.replicates) {
        level.valid = false;
        level.invalid_reason = "more than 50% fit failures (" +
                               std::to_string(level.n_fail) + "/" +
                               std::to_string(cfg.replicates) + "); first: " +
                               (level.failure_reasons.empty() ? std::string("?")
                                                              : level.failure_reasons[0]);
    }
    return level;
}

SweepResult noise_sweep(const ExperimentConfig& cfg) {
    std::vector<double> gammas = cfg.gamma_schedule;
    if (gammas.empty()) gammas = default_gamma_schedule(cfg.model, cfg.kind);
    if (gammas.empty()) throw ConfigError("noise_sweep: empty noise schedule");
    if (!std::is_sorted(gammas.begin(), gammas.end())) {
        throw ConfigError("noise_sweep: schedule must be increasing");
    }

    SweepResult sweep;
    for (double g : gammas) {
        sweep.levels.push_back(run_level(cfg, "noise", g, cfg.points));
        const LevelResult& level = sweep.levels.back();
        if (level.valid && level.n_success > 0 && level.coverage.minCoeff() < 0.5) {
            sweep.stop_reason = "coverage of some parameter fell below 50% at gamma=" +
                                std::to_string(g);
            return sweep;
        }
        if (g >= 0.9) {
            sweep.stop_reason = "max level (gamma >= 0.9) reached";
            return sweep;
        }
    }
    sweep.stop_reason = "schedule exhausted";
    return sweep;
}

SweepResult resolution_sweep(const ExperimentConfig& cfg) {
    std::vector<int> points = cfg.points_schedule;
    if (points.empty()) points = default_points_schedule(cfg.model);
    if (points.empty()) throw ConfigError("resolution_sweep: empty resolution schedule");

    SweepResult sweep;
    for (int p : points) {
        sweep.levels.push_back(run_level(cfg, "resolution", cfg.gamma, p));
    }
    sweep.stop_reason = "schedule exhausted";
    return sweep;
}

std::vector<double> default_gamma_schedule(const std::string& model, NoiseKind kind) {
    // Levels follow the published sweeps where stated; the rest interpolate
    // up to each model's reported breakdown region.
    if (model == "logistic") {
        switch (kind) {
            case NoiseKind::AdditiveNormal: return {0.05, 0.25, 0.50, 0.70};
            case NoiseKind::CensoredNormal: return {0.10, 0.30, 0.45, 0.60};
            case NoiseKind::TruncatedNormal: return {0.10, 0.30, 0.60, 0.90};
            case NoiseKind::MultiplicativeLogNormal: return {0.05, 0.30, 0.60, 0.90};
        }
    }
    if (model == "lotka_volterra" || model == "lv") {
        switch (kind) {
            case NoiseKind::AdditiveNormal: return {0.10, 0.30, 0.50, 0.60};
            case NoiseKind::CensoredNormal: return {0.30, 0.50, 0.65, 0.80};
            case NoiseKind::TruncatedNormal: return {0.025, 0.05, 0.075, 0.10};
            case NoiseKind::MultiplicativeLogNormal: return {0.05, 0.20, 0.40, 0.90};
        }
    }
    if (model == "fitzhugh_nagumo" || model == "fhn") {
        if (kind == NoiseKind::MultiplicativeLogNormal) {
            return {0.002, 0.004, 0.006, 0.008};
        }
        return {0.02, 0.04, 0.055, 0.07};
    }
    if (model == "hindmarsh_rose" || model == "hmr") {
        if (kind == NoiseKind::MultiplicativeLogNormal) {
            return {0.0005, 0.001, 0.0015, 0.0025};
        }
        return {0.01, 0.02, 0.03, 0.04};
    }
    if (model == "ptb") {
        if (kind == NoiseKind::TruncatedNormal) return {0.10, 0.30, 0.45, 0.60};
        return {0.10, 0.30, 0.60, 0.90};
    }
    return {0.10, 0.30, 0.60, 0.90};
}

std::vector<int> default_points_schedule(const std::string& model) {
    if (model == "fitzhugh_nagumo" || model == "fhn") return {20, 120, 260, 400};
    if (model == "hindmarsh_rose" || model == "hmr") return {50, 150, 250, 350};
    if (model == "ptb") return {30, 130, 230, 330};
    return {20, 120, 220, 320};
}

BootstrapCloud bootstrap_cloud(const WendyFit& fit, const ModelSpec& model,
                               const Eigen::VectorXd& u0, double t0, double T,
                               int segments, int substeps, int n_samples,
                               std::uint64_t seed) {
    if (n_samples < 1) throw ConfigError("bootstrap_cloud: need n_samples >= 1");
    const int P = static_cast<int>(fit.active.size());
    if (fit.S.rows() != P || fit.S.cols() != P) {
        throw ConfigError("bootstrap_cloud: S does not match the parameter count");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fit.S);
    if (eig.info() != Eigen::Success) {
        throw FactorizationError("bootstrap_cloud: eigendecomposition of S failed",
                                 std::numeric_limits<double>::quiet_NaN());
    }
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
    if (lam.minCoeff() < -1e-8 * scale) {
        throw FactorizationError(
            "bootstrap_cloud: S is not positive semidefinite (smallest eigenvalue " +
                std::to_string(lam.minCoeff()) + ")",
            lam.minCoeff());
    }
    const Eigen::VectorXd root = lam.cwiseMax(0.0).cwiseSqrt();

    BootstrapCloud cloud;
    cloud.central = integrate(model, fit.W, u0, t0, T, segments, substeps);
    cloud.samples.resize(n_samples);
    cloud.divergent.assign(n_samples, 0);
    cloud.draws.resize(n_samples, P);

    SplitMix64 rng(seed);
    for (int k = 0; k < n_samples; ++k) {
        Eigen::VectorXd z(P);
        for (int p = 0; p < P; ++p) z[p] = rng.normal();
        const Eigen::VectorXd draw =
            fit.active + eig.eigenvectors() * root.cwiseProduct(z);
        cloud.draws.row(k) = draw.transpose();

        // Active entries replaced by the draw; inactive estimates kept.
        Eigen::MatrixXd W = fit.W;
        for (int p = 0; p < P; ++p) {
            W(model.active[p].first, model.active[p].second) = draw[p];
        }
        try {
            cloud.samples[k] = integrate(model, W, u0, t0, T, segments, substeps);
        } catch (const DivergenceError&) {
            cloud.divergent[k] = 1;
        }
    }
    return cloud;
}

std::vector<StateHistogram> state_histograms(const BootstrapCloud& cloud,
                                             const std::vector<int>& time_indices,
                                             int bins) {
    if (bins < 1) throw ConfigError("state_histograms: need bins >= 1");
    const int n_points = cloud.central.points();
    const int d = cloud.central.dim();

    std::vector<StateHistogram> out;
    for (int ti : time_indices) {
        if (ti < 0 || ti >= n_points) {
            throw ConfigError("state_histograms: time index " + std::to_string(ti) +
                              " outside the grid");
        }
        for (int i = 0; i < d; ++i) {
            StateHistogram h;
            h.time_index = ti;
            h.state = i;
            h.counts.assign(bins, 0);
            std::vector<double> values;
            values.reserve(cloud.samples.size());
            for (size_t k = 0; k < cloud.samples.size(); ++k) {
                if (cloud.divergent[k]) continue;
                values.push_back(cloud.samples[k].states(ti, i));
            }
            if (!values.empty()) {
                const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
                h.lo = *mn;
                h.hi = *mx;
                const double width = h.hi - h.lo;
                for (double v : values) {
                    int b = width > 0.0
                                ? std::min(bins - 1, static_cast<int>((v - h.lo) / width *
                                                                      bins))
                                : 0;
                    ++h.counts[b];
                }
            }
            out.push_back(std::move(h));
        }
    }
    return out;
}

}  // namespace wendy
