#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "svg.hpp"
#include "wendy/errors.hpp"
#include "wendy/estimator.hpp"
#include "wendy/grid.hpp"
#include "wendy/harness.hpp"
#include "wendy/models.hpp"
#include "wendy/noise.hpp"
#include "wendy/rng.hpp"
#include "wendy/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CliOptions {
    std::string model = "logistic";
    std::string noise = "normal";
    double gamma = 0.0;
    int points = 0;
    double horizon = 0.0;
    int substeps = 20;
    int replicates = 200;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int threads = 0;
    bool full = false;
    bool mln_squared = false;

    int centers = 0;
    int radius_mult = 0;
    double eta = 9.0;
    double tol = 1e-6;
    int max_iter = 100;
    double ci_level = 0.95;
    int filter_order = 14;

    std::vector<double> schedule;
    std::vector<int> points_schedule;

    std::string input;
    int samples = 100;
    int bins = 30;
    bool raw = false;
    bool render_svg = false;
};

json options_to_json(const CliOptions& o) {
    return json{{"model", o.model},
                {"noise", o.noise},
                {"gamma", o.gamma},
                {"points", o.points},
                {"horizon", o.horizon},
                {"substeps", o.substeps},
                {"replicates", o.replicates},
                {"seed", o.seed},
                {"out_dir", o.out_dir},
                {"threads", o.threads},
                {"full", o.full},
                {"mln_squared", o.mln_squared},
                {"centers", o.centers},
                {"radius_mult", o.radius_mult},
                {"eta", o.eta},
                {"tol", o.tol},
                {"max_iter", o.max_iter},
                {"ci_level", o.ci_level},
                {"filter_order", o.filter_order},
                {"schedule", o.schedule},
                {"points_schedule", o.points_schedule},
                {"input", o.input},
                {"samples", o.samples},
                {"bins", o.bins},
                {"raw", o.raw},
                {"svg", o.render_svg}};
}

void options_from_json(const json& j, CliOptions& o) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("model", o.model);
    get("noise", o.noise);
    get("gamma", o.gamma);
    get("points", o.points);
    get("horizon", o.horizon);
    get("substeps", o.substeps);
    get("replicates", o.replicates);
    get("seed", o.seed);
    get("out_dir", o.out_dir);
    get("threads", o.threads);
    get("full", o.full);
    get("mln_squared", o.mln_squared);
    get("centers", o.centers);
    get("radius_mult", o.radius_mult);
    get("eta", o.eta);
    get("tol", o.tol);
    get("max_iter", o.max_iter);
    get("ci_level", o.ci_level);
    get("filter_order", o.filter_order);
    get("schedule", o.schedule);
    get("points_schedule", o.points_schedule);
    get("input", o.input);
    get("samples", o.samples);
    get("bins", o.bins);
    get("raw", o.raw);
    get("svg", o.render_svg);
}

/// Loads a config file (plain options object, or a manifest whose "config"
/// member holds one) before CLI parsing so flags can override it.
void preload_config(int argc, char** argv, CliOptions& o) {
    std::string path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    }
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw wendy::ConfigError("cannot open config file '" + path + "'");
    json j = json::parse(is);
    if (j.contains("config")) j = j.at("config");
    options_from_json(j, o);
}

wendy::ExperimentConfig experiment_config(const CliOptions& o) {
    wendy::ExperimentConfig cfg;
    cfg.model = o.model;
    cfg.kind = wendy::noise_kind_from_string(o.noise);
    cfg.gamma = o.gamma;
    cfg.gamma_schedule = o.schedule;
    cfg.points_schedule = o.points_schedule;
    cfg.points = o.points;
    cfg.horizon = o.horizon;
    cfg.replicates = o.full ? 1000 : o.replicates;
    cfg.base_seed = o.seed;
    cfg.substeps = o.substeps;
    cfg.threads = o.threads > 0
                      ? o.threads
                      : std::max(1u, std::thread::hardware_concurrency());
    cfg.mln_squared = o.mln_squared;
    cfg.fit.center_count = o.centers;
    cfg.fit.radius_mult = o.radius_mult;
    cfg.fit.eta = o.eta;
    cfg.fit.tol = o.tol;
    cfg.fit.max_iter = o.max_iter;
    cfg.fit.ci_level = o.ci_level;
    cfg.fit.filter_order = o.filter_order;
    return cfg;
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw wendy::ConfigError("cannot write '" + path.string() + "'");
    os << content;
}

struct ManifestWriter {
    fs::path dir;
    json manifest;

    ManifestWriter(const std::string& command, const CliOptions& o) : dir(o.out_dir) {
        fs::create_directories(dir);
        manifest["command"] = command;
        manifest["tool_version"] = kToolVersion;
        manifest["base_seed"] = o.seed;
        manifest["config"] = options_to_json(o);
        manifest["started_at"] = now_iso8601();
        manifest["outputs"] = json::array();
    }

    void add_output(const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        manifest["outputs"].push_back(name);
    }

    void finish() {
        manifest["finished_at"] = now_iso8601();
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    }
};

wendy::StateGrid simulate_truth(const wendy::ModelSpec& model, const CliOptions& o) {
    const double T = o.horizon > 0 ? o.horizon : model.default_T;
    const int points = o.points > 0 ? o.points : model.default_points;
    return wendy::integrate(model, model.true_params, model.u0, 0.0, T, points - 1,
                            o.substeps);
}

wendy::StateGrid maybe_add_noise(const wendy::StateGrid& truth, const CliOptions& o) {
    if (o.gamma <= 0.0) return truth;
    wendy::NoiseConfig nc;
    nc.kind = wendy::noise_kind_from_string(o.noise);
    nc.gamma = o.gamma;
    nc.sigmas = wendy::calibrate_sigma(nc.kind, truth, o.gamma, o.mln_squared);
    nc.seed = o.seed;
    return wendy::add_noise(truth, nc);
}

wendy::StateGrid load_or_simulate(const wendy::ModelSpec& model, const CliOptions& o) {
    if (!o.input.empty()) {
        std::ifstream is(o.input);
        if (!is) throw wendy::ConfigError("cannot open input file '" + o.input + "'");
        return wendy::read_trajectory_csv(is);
    }
    return maybe_add_noise(simulate_truth(model, o), o);
}

std::string trajectory_csv(const wendy::StateGrid& grid) {
    std::ostringstream ss;
    wendy::write_trajectory_csv(ss, grid);
    return ss.str();
}

// ---------------------------------------------------------------------------
// result serialization
// ---------------------------------------------------------------------------

std::string results_csv(const std::vector<wendy::LevelResult>& levels,
                        const std::vector<std::string>& names) {
    std::string out =
        "level_kind,level_value,param,coverage,bias,rel_bias,mean_se,emp_sd,"
        "n_success,n_fail\n";
    for (const auto& level : levels) {
        for (size_t p = 0; p < names.size(); ++p) {
            const auto ip = static_cast<Eigen::Index>(p);
            double mean_se = std::numeric_limits<double>::quiet_NaN();
            double emp_sd = std::numeric_limits<double>::quiet_NaN();
            if (level.n_success > 0) {
                mean_se = level.ses.col(ip).mean();
                if (level.n_success > 1) {
                    const double mu = level.estimates.col(ip).mean();
                    emp_sd = std::sqrt(
                        (level.estimates.col(ip).array() - mu).square().sum() /
                        (level.n_success - 1));
                }
            }
            out += level.level_kind + "," + g17(level.level_value) + "," + names[p] +
                   "," + (level.n_success > 0 ? g17(level.coverage[ip]) : "nan") + "," +
                   (level.n_success > 0 ? g17(level.bias[ip]) : "nan") + "," +
                   (level.n_success > 0 ? g17(level.rel_bias[ip]) : "nan") + "," +
                   g17(mean_se) + "," + g17(emp_sd) + "," +
                   std::to_string(level.n_success) + "," + std::to_string(level.n_fail) +
                   "\n";
        }
    }
    return out;
}

std::string raw_estimates_csv(const std::vector<wendy::LevelResult>& levels,
                              const std::vector<std::string>& names) {
    std::string out = "level_kind,level_value,replicate,param,estimate,se\n";
    for (const auto& level : levels) {
        for (int row = 0; row < level.n_success; ++row) {
            for (size_t p = 0; p < names.size(); ++p) {
                const auto ip = static_cast<Eigen::Index>(p);
                out += level.level_kind + "," + g17(level.level_value) + "," +
                       std::to_string(level.replicate_ids[row]) + "," + names[p] + "," +
                       g17(level.estimates(row, ip)) + "," + g17(level.ses(row, ip)) +
                       "\n";
            }
        }
    }
    return out;
}

json level_to_json(const wendy::LevelResult& level,
                   const std::vector<std::string>& names) {
    json per_param = json::array();
    for (size_t p = 0; p < names.size(); ++p) {
        const auto ip = static_cast<Eigen::Index>(p);
        json entry{{"param", names[p]}};
        if (level.n_success > 0) {
            entry["coverage"] = level.coverage[ip];
            entry["bias"] = level.bias[ip];
            if (std::isfinite(level.rel_bias[ip])) {
                entry["rel_bias"] = level.rel_bias[ip];
            } else {
                entry["rel_bias"] = nullptr;  // w* = 0: undefined marker
            }
            entry["mean_se"] = level.ses.col(ip).mean();
        }
        per_param.push_back(entry);
    }
    json j{{"level_kind", level.level_kind},
           {"level_value", level.level_value},
           {"gamma", level.gamma},
           {"points", level.points},
           {"n_success", level.n_success},
           {"n_fail", level.n_fail},
           {"mean_noise_ratio", level.mean_noise_ratio},
           {"valid", level.valid},
           {"params", per_param}};
    if (!level.valid) j["invalid_reason"] = level.invalid_reason;
    if (!level.failure_reasons.empty()) {
        j["first_failure"] = level.failure_reasons.front();
    }
    return j;
}

json sweep_to_json(const wendy::SweepResult& sweep,
                   const std::vector<std::string>& names) {
    json levels = json::array();
    for (const auto& level : sweep.levels) levels.push_back(level_to_json(level, names));
    return json{{"levels", levels}, {"stop_reason", sweep.stop_reason}};
}

std::string coverage_svg(const std::vector<wendy::LevelResult>& levels,
                         const std::vector<std::string>& names,
                         const std::string& title, const std::string& x_label) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf", "#aec7e8"};
    std::vector<wendy::svg::Series> series;
    for (size_t p = 0; p < names.size(); ++p) {
        wendy::svg::Series s;
        s.label = names[p];
        s.color = palette[p % 11];
        for (const auto& level : levels) {
            if (level.n_success == 0) continue;
            s.x.push_back(level.level_value);
            s.y.push_back(level.coverage[static_cast<Eigen::Index>(p)]);
        }
        series.push_back(std::move(s));
    }
    return wendy::svg::line_chart(title, x_label, "coverage", series);
}

json fit_to_json(const wendy::ModelSpec& model, const wendy::WendyFit& f,
                 double ci_level) {
    const auto ci = wendy::confidence_intervals(f.active, f.ses, ci_level);
    const auto names = model.param_names();
    json params = json::array();
    for (size_t p = 0; p < names.size(); ++p) {
        const auto ip = static_cast<Eigen::Index>(p);
        params.push_back(json{{"name", names[p]},
                              {"estimate", f.active[ip]},
                              {"se", f.ses[ip]},
                              {"ci_lo", ci[p].first},
                              {"ci_hi", ci[p].second}});
    }
    return json{{"model", model.name},
                {"params", params},
                {"sigma2_hat", f.sigma2},
                {"iterations", f.iterations},
                {"converged", f.converged},
                {"condition_number", f.condition}};
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_simulate(const CliOptions& o) {
    const wendy::ModelSpec model = wendy::get_benchmark(o.model);
    ManifestWriter mw("simulate", o);
    const wendy::StateGrid grid = maybe_add_noise(simulate_truth(model, o), o);
    mw.add_output("trajectory.csv", trajectory_csv(grid));
    mw.finish();
    std::cout << (mw.dir / "trajectory.csv").string() << "\n";
    return 0;
}

int cmd_fit(const CliOptions& o) {
    const wendy::ModelSpec model = wendy::get_benchmark(o.model);
    const wendy::StateGrid data = load_or_simulate(model, o);
    ManifestWriter mw("fit", o);
    const wendy::ExperimentConfig cfg = experiment_config(o);
    const wendy::WendyFit f = wendy::fit(model, data, cfg.fit);
    mw.add_output("fit.json", fit_to_json(model, f, o.ci_level).dump(2) + "\n");
    mw.finish();
    std::cout << (mw.dir / "fit.json").string() << "\n";
    if (!f.usable()) {
        std::cerr << "fit produced non-finite estimates\n";
        return 1;
    }
    return 0;
}

int write_level_outputs(ManifestWriter& mw, const wendy::SweepResult& sweep,
                        const std::vector<std::string>& names, const CliOptions& o,
                        const std::string& title, const std::string& x_label) {
    mw.add_output("results.csv", results_csv(sweep.levels, names));
    mw.add_output("summary.json", sweep_to_json(sweep, names).dump(2) + "\n");
    if (o.raw) mw.add_output("estimates.csv", raw_estimates_csv(sweep.levels, names));
    if (o.render_svg) {
        mw.add_output("coverage.svg", coverage_svg(sweep.levels, names, title, x_label));
    }
    mw.finish();
    std::cout << (mw.dir / "results.csv").string() << "\n";
    bool any_valid = false;
    for (const auto& level : sweep.levels) any_valid |= level.valid;
    return any_valid ? 0 : 1;
}

int cmd_experiment(const CliOptions& o) {
    ManifestWriter mw("experiment", o);
    const wendy::ExperimentConfig cfg = experiment_config(o);
    wendy::SweepResult sweep;
    sweep.levels.push_back(wendy::run_level(cfg, "single", cfg.gamma, cfg.points));
    sweep.stop_reason = "single level";
    const auto names = wendy::get_benchmark(o.model).param_names();
    return write_level_outputs(mw, sweep, names, o, o.model + " coverage", "level");
}

int cmd_sweep_noise(const CliOptions& o) {
    ManifestWriter mw("sweep-noise", o);
    const wendy::SweepResult sweep = wendy::noise_sweep(experiment_config(o));
    const auto names = wendy::get_benchmark(o.model).param_names();
    return write_level_outputs(mw, sweep, names, o,
                               o.model + " coverage vs noise (" + o.noise + ")",
                               "noise level gamma");
}

int cmd_sweep_resolution(const CliOptions& o) {
    ManifestWriter mw("sweep-resolution", o);
    const wendy::SweepResult sweep = wendy::resolution_sweep(experiment_config(o));
    const auto names = wendy::get_benchmark(o.model).param_names();
    return write_level_outputs(mw, sweep, names, o,
                               o.model + " coverage vs resolution (" + o.noise + ")",
                               "grid points (M+1)");
}

int cmd_bootstrap(const CliOptions& o) {
    const wendy::ModelSpec model = wendy::get_benchmark(o.model);
    const wendy::StateGrid data = load_or_simulate(model, o);
    ManifestWriter mw("bootstrap", o);
    const wendy::ExperimentConfig cfg = experiment_config(o);
    const wendy::WendyFit f = wendy::fit(model, data, cfg.fit);

    const double T = data.t_end();
    const wendy::BootstrapCloud cloud = wendy::bootstrap_cloud(
        f, model, model.u0, data.t0, T, data.segments(), o.substeps, o.samples,
        wendy::stream_seed(o.seed, 0x626f6f74ull));

    std::string cloud_csv = "sample,t";
    for (int i = 1; i <= model.d; ++i) cloud_csv += ",u" + std::to_string(i);
    cloud_csv += "\n";
    auto append_traj = [&](int id, const wendy::StateGrid& g) {
        for (int m = 0; m < g.points(); ++m) {
            cloud_csv += std::to_string(id) + "," + g17(g.time(m));
            for (int i = 0; i < g.dim(); ++i) cloud_csv += "," + g17(g.states(m, i));
            cloud_csv += "\n";
        }
    };
    append_traj(-1, cloud.central);  // sample -1 is the central fit
    for (int k = 0; k < o.samples; ++k) {
        if (!cloud.divergent[k]) append_traj(k, cloud.samples[k]);
    }
    mw.add_output("cloud.csv", cloud_csv);

    // Default histogram probes: 8 evenly spaced interior grid points.
    std::vector<int> time_indices;
    const int M = data.segments();
    for (int k = 1; k <= 8; ++k) {
        time_indices.push_back(static_cast<int>(std::lround(k * M / 9.0)));
    }
    const auto hists = wendy::state_histograms(cloud, time_indices, o.bins);
    std::string hist_csv = "time_index,t,state,bin,lo,hi,count\n";
    for (const auto& h : hists) {
        for (size_t b = 0; b < h.counts.size(); ++b) {
            hist_csv += std::to_string(h.time_index) + "," +
                        g17(cloud.central.time(h.time_index)) + "," +
                        std::to_string(h.state + 1) + "," + std::to_string(b) + "," +
                        g17(h.lo) + "," + g17(h.hi) + "," + std::to_string(h.counts[b]) +
                        "\n";
        }
    }
    mw.add_output("histograms.csv", hist_csv);

    int divergent = 0;
    for (char flag : cloud.divergent) divergent += flag;
    json summary{{"model", model.name},
                 {"samples", o.samples},
                 {"divergent", divergent},
                 {"fit", fit_to_json(model, f, o.ci_level)}};
    mw.add_output("summary.json", summary.dump(2) + "\n");

    if (o.render_svg) {
        std::vector<wendy::svg::Series> series;
        for (int i = 0; i < model.d; ++i) {
            for (int k = 0; k < o.samples; ++k) {
                if (cloud.divergent[k]) continue;
                wendy::svg::Series s;
                s.color = "#bbbbbb";
                s.width = 0.6;
                s.opacity = 0.5;
                for (int m = 0; m < cloud.samples[k].points(); ++m) {
                    s.x.push_back(cloud.samples[k].time(m));
                    s.y.push_back(cloud.samples[k].states(m, i));
                }
                series.push_back(std::move(s));
            }
        }
        for (int i = 0; i < model.d; ++i) {
            wendy::svg::Series s;
            s.label = "u" + std::to_string(i + 1);
            s.color = i == 0 ? "#000000" : (i == 1 ? "#d62728" : "#1f77b4");
            s.width = 2.0;
            for (int m = 0; m < cloud.central.points(); ++m) {
                s.x.push_back(cloud.central.time(m));
                s.y.push_back(cloud.central.states(m, i));
            }
            series.push_back(std::move(s));
        }
        mw.add_output("cloud.svg",
                      wendy::svg::line_chart(o.model + " bootstrap cloud", "t", "u",
                                             series));
    }
    mw.finish();
    std::cout << (mw.dir / "cloud.csv").string() << "\n";
    return 0;
}

void add_common_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--config", "JSON config file (or a manifest) read before flags")
        ->type_name("FILE");
    cmd->add_option("--model", o.model, "benchmark model name");
    cmd->add_option("--noise", o.noise, "noise kind: normal|acn|atn|mln");
    cmd->add_option("--gamma", o.gamma, "noise level in (0,1]");
    cmd->add_option("--points", o.points, "grid size M+1 (0 = model default)");
    cmd->add_option("--T", o.horizon, "time horizon (0 = model default)");
    cmd->add_option("--substeps", o.substeps, "RK4 substeps per output interval");
    cmd->add_option("--replicates", o.replicates, "Monte Carlo replicates");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads, "worker cap (0 = hardware)");
    cmd->add_flag("--full", o.full, "paper-scale replicates (1000)");
    cmd->add_flag("--mln-squared", o.mln_squared,
                  "calibrate MLN noise against (range*gamma)^2");
    cmd->add_option("--K", o.centers, "test function count (0 = default)");
    cmd->add_option("--radius-mult", o.radius_mult,
                    "test function half-width in grid steps (0 = default)");
    cmd->add_option("--eta", o.eta, "bump shape parameter");
    cmd->add_option("--tol", o.tol, "IRLS relative convergence tolerance");
    cmd->add_option("--max-iter", o.max_iter, "IRLS iteration cap");
    cmd->add_option("--ci-level", o.ci_level, "confidence level for reports");
    cmd->add_option("--filter-order", o.filter_order,
                    "variance filter difference order");
    cmd->add_flag("--svg", o.render_svg, "write quick-look SVG plots");
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions o;
    CLI::App app{"Weak-form parameter estimation for ODE benchmarks"};
    app.require_subcommand(1);

    try {
        preload_config(argc, argv, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto* sim = app.add_subcommand("simulate", "integrate a benchmark, optionally add noise");
    add_common_options(sim, o);

    auto* fit_cmd = app.add_subcommand("fit", "run the weak-form fit on a trajectory");
    add_common_options(fit_cmd, o);
    fit_cmd->add_option("--input", o.input, "trajectory CSV (default: simulate inline)");

    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo coverage at one level");
    add_common_options(exp_cmd, o);
    exp_cmd->add_flag("--raw", o.raw, "write per-replicate estimates CSV");

    auto* sweep_n = app.add_subcommand("sweep-noise", "coverage across noise levels");
    add_common_options(sweep_n, o);
    sweep_n->add_option("--schedule", o.schedule, "gamma levels (increasing)");
    sweep_n->add_flag("--raw", o.raw, "write per-replicate estimates CSV");

    auto* sweep_r = app.add_subcommand("sweep-resolution", "coverage across grid sizes");
    add_common_options(sweep_r, o);
    sweep_r->add_option("--points-schedule", o.points_schedule, "grid sizes M+1");
    sweep_r->add_flag("--raw", o.raw, "write per-replicate estimates CSV");

    auto* boot = app.add_subcommand("bootstrap", "parametric bootstrap solution cloud");
    add_common_options(boot, o);
    boot->add_option("--input", o.input, "trajectory CSV (default: simulate inline)");
    boot->add_option("--samples", o.samples, "number of parameter draws");
    boot->add_option("--bins", o.bins, "histogram bin count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(o);
        if (fit_cmd->parsed()) return cmd_fit(o);
        if (exp_cmd->parsed()) return cmd_experiment(o);
        if (sweep_n->parsed()) return cmd_sweep_noise(o);
        if (sweep_r->parsed()) return cmd_sweep_resolution(o);
        if (boot->parsed()) return cmd_bootstrap(o);
    } catch (const wendy::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
