#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("WENDY_CLI");
    REQUIRE_MESSAGE(p != nullptr, "WENDY_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd =
        cli_path() + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE_MESSAGE(is.good(), "missing file: " << p.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) n += (c == '\n');
    return n;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("wendy_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("simulate writes the requested grid and is seed-deterministic") {
    TempDir tmp;
    const fs::path out1 = tmp.path / "a";
    const RunResult r1 = run("simulate --model logistic --points 103 --out-dir " +
                                 out1.string(),
                             tmp.path);
    REQUIRE(r1.exit_code == 0);
    const std::string csv1 = slurp_file(out1 / "trajectory.csv");
    CHECK(count_lines(csv1) == 104);  // header + 103 rows
    CHECK(csv1.rfind("t,u1\n", 0) == 0);

    const fs::path out2 = tmp.path / "b";
    const fs::path out3 = tmp.path / "c";
    const std::string noisy_args =
        "simulate --model lotka_volterra --noise mln --gamma 0.05 --seed 7 --out-dir ";
    REQUIRE(run(noisy_args + out2.string(), tmp.path).exit_code == 0);
    REQUIRE(run(noisy_args + out3.string(), tmp.path).exit_code == 0);
    CHECK(slurp_file(out2 / "trajectory.csv") == slurp_file(out3 / "trajectory.csv"));
}

TEST_CASE("unknown model exits with usage code and names the options") {
    TempDir tmp;
    const RunResult r = run("simulate --model unknown --out-dir " +
                                (tmp.path / "x").string(),
                            tmp.path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("logistic") != std::string::npos);
}

TEST_CASE("fit on noise-free logistic recovers the parameters in json") {
    TempDir tmp;
    const fs::path out = tmp.path / "fit";
    const RunResult r =
        run("fit --model logistic --out-dir " + out.string(), tmp.path);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp_file(out / "fit.json"));
    CHECK(j["model"] == "logistic");
    CHECK(j["converged"].get<bool>());
    REQUIRE(j["params"].size() == 2);
    CHECK(std::abs(j["params"][0]["estimate"].get<double>() - 1.0) < 1e-3);
    CHECK(std::abs(j["params"][1]["estimate"].get<double>() + 1.0) < 1e-3);
    CHECK(j["params"][0]["name"] == "w1");
    CHECK(j.contains("sigma2_hat"));
    CHECK(j.contains("condition_number"));
}

TEST_CASE("wider level gives wider intervals") {
    TempDir tmp;
    auto width_at = [&](const std::string& level, const fs::path& out) {
        const RunResult r = run("fit --model logistic --noise normal --gamma 0.05 "
                                "--seed 5 --ci-level " +
                                    level + " --out-dir " + out.string(),
                                tmp.path);
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(slurp_file(out / "fit.json"));
        double min_width = 1e300;
        for (const auto& p : j["params"]) {
            min_width = std::min(min_width, p["ci_hi"].get<double>() -
                                                p["ci_lo"].get<double>());
        }
        return min_width;
    };
    const double w95 = width_at("0.95", tmp.path / "a");
    const double w99 = width_at("0.99", tmp.path / "b");
    CHECK(w99 > w95);
}

TEST_CASE("missing input file is a usage error") {
    TempDir tmp;
    const RunResult r = run("fit --model logistic --input /nonexistent.csv --out-dir " +
                                (tmp.path / "x").string(),
                            tmp.path);
    CHECK(r.exit_code == 2);
}

TEST_CASE("experiment emits the documented csv schema even with one replicate") {
    TempDir tmp;
    const fs::path out = tmp.path / "exp";
    const RunResult r = run(
        "experiment --model logistic --noise normal --gamma 0.05 --replicates 1 "
        "--seed 2 --out-dir " +
            out.string(),
        tmp.path);
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp_file(out / "results.csv");
    CHECK(csv.rfind("level_kind,level_value,param,coverage,bias,rel_bias,mean_se,"
                    "emp_sd,n_success,n_fail\n",
                    0) == 0);
    CHECK(count_lines(csv) == 3);  // header + 2 params
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("sweep row count is levels times parameters") {
    TempDir tmp;
    const fs::path out = tmp.path / "sweep";
    const RunResult r = run(
        "sweep-resolution --model logistic --noise normal --gamma 0.05 "
        "--points-schedule 30 40 --replicates 2 --seed 3 --svg --out-dir " +
            out.string(),
        tmp.path);
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp_file(out / "results.csv");
    CHECK(count_lines(csv) == 1 + 2 * 2);
    CHECK(fs::exists(out / "coverage.svg"));
    const std::string svg = slurp_file(out / "coverage.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("rerunning from the manifest reproduces payloads bitwise") {
    TempDir tmp;
    const fs::path out1 = tmp.path / "run1";
    const fs::path out2 = tmp.path / "run2";
    const RunResult r1 = run(
        "experiment --model logistic --noise acn --gamma 0.1 --replicates 4 --raw "
        "--seed 42 --out-dir " +
            out1.string(),
        tmp.path);
    REQUIRE(r1.exit_code == 0);

    // Re-run from the manifest, overriding only the output directory.
    const RunResult r2 = run("experiment --config " +
                                 (out1 / "manifest.json").string() + " --out-dir " +
                                 out2.string(),
                             tmp.path);
    REQUIRE(r2.exit_code == 0);
    for (const char* name : {"results.csv", "summary.json", "estimates.csv"}) {
        CHECK(slurp_file(out1 / name) == slurp_file(out2 / name));
    }
}

TEST_CASE("bootstrap writes cloud, histograms, and summary") {
    TempDir tmp;
    const fs::path out = tmp.path / "boot";
    const RunResult r = run(
        "bootstrap --model logistic --noise normal --gamma 0.05 --samples 10 "
        "--seed 9 --svg --out-dir " +
            out.string(),
        tmp.path);
    REQUIRE(r.exit_code == 0);
    const std::string cloud = slurp_file(out / "cloud.csv");
    CHECK(cloud.rfind("sample,t,u1\n", 0) == 0);
    // central (-1) + 10 samples, 103 rows each
    CHECK(count_lines(cloud) == 1 + 11 * 103);
    const std::string hist = slurp_file(out / "histograms.csv");
    CHECK(hist.rfind("time_index,t,state,bin,lo,hi,count\n", 0) == 0);
    CHECK(count_lines(hist) == 1 + 8 * 30);  // 8 probes x 30 bins x 1 state
    const json j = json::parse(slurp_file(out / "summary.json"));
    CHECK(j["samples"] == 10);
    CHECK(fs::exists(out / "cloud.svg"));
}

TEST_CASE("missing subcommand is a usage error") {
    TempDir tmp;
    CHECK(run("", tmp.path).exit_code == 2);
}
