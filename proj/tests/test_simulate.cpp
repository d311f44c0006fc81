#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wendy/errors.hpp"
#include "wendy/grid.hpp"
#include "wendy/models.hpp"
#include "wendy/simulate.hpp"

using namespace wendy;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("logistic endpoint matches the closed-form solution") {
    const ModelSpec model = get_benchmark("logistic");
    const StateGrid grid =
        integrate(model, model.true_params, model.u0, 0.0, 10.0, 102, 20);
    const double u0 = 0.01;
    const double exact = u0 * std::exp(10.0) / (1.0 + u0 * (std::exp(10.0) - 1.0));
    CHECK(std::abs(grid.states(102, 0) - exact) < 1e-6);
    CHECK(grid.states(0, 0) == u0);
}

TEST_CASE("zero parameters give a constant trajectory") {
    const ModelSpec model = get_benchmark("lotka_volterra");
    const MatrixXd W = MatrixXd::Zero(model.J, model.d);
    const StateGrid grid = integrate(model, W, model.u0, 0.0, 5.0, 50);
    for (int m = 0; m <= 50; ++m) {
        REQUIRE(grid.states.row(m) == model.u0.transpose());
    }
}

TEST_CASE("rk4 self-convergence is fourth order") {
    const ModelSpec model = get_benchmark("lotka_volterra");
    auto endpoint = [&](int substeps) {
        return integrate(model, model.true_params, model.u0, 0.0, 5.0, 204, substeps)
            .states.row(204);
    };
    const Eigen::RowVectorXd ref = endpoint(160);
    const double err_s = (endpoint(10) - ref).norm();
    const double err_2s = (endpoint(20) - ref).norm();
    const double ratio = err_s / err_2s;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("grid times are exact multiples of dt") {
    const ModelSpec model = get_benchmark("logistic");
    const StateGrid grid =
        integrate(model, model.true_params, model.u0, 0.0, 10.0, 102);
    for (int m = 0; m <= 102; ++m) {
        REQUIRE(grid.time(m) == 0.0 + m * grid.dt);
    }
    CHECK(grid.dt == 10.0 / 102);
}

TEST_CASE("integration is deterministic") {
    const ModelSpec model = get_benchmark("hindmarsh_rose");
    const StateGrid a = integrate(model, model.true_params, model.u0, 0.0, 5.5, 204);
    const StateGrid b = integrate(model, model.true_params, model.u0, 0.0, 5.5, 204);
    CHECK(a.states == b.states);
}

TEST_CASE("finite-time blow-up raises a divergence error with its time") {
    const ModelSpec model = get_benchmark("logistic");
    MatrixXd W(2, 1);
    W << 1.0, 1.0;  // du/dt = u + u^2 from u0=1 blows up before t=1
    VectorXd u0(1);
    u0 << 1.0;
    try {
        (void)integrate(model, W, u0, 0.0, 5.0, 100, 50);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time > 0.0);
        CHECK(e.time <= 5.0);
    }
}

TEST_CASE("trajectory csv round trip keeps full precision") {
    const ModelSpec model = get_benchmark("lotka_volterra");
    const StateGrid grid = integrate(model, model.true_params, model.u0, 0.0, 5.0, 60);
    std::stringstream ss;
    write_trajectory_csv(ss, grid);
    const std::string text = ss.str();
    CHECK(text.rfind("t,u1,u2\n", 0) == 0);

    std::stringstream in(text);
    const StateGrid back = read_trajectory_csv(in);
    CHECK(back.points() == grid.points());
    CHECK((back.states - grid.states).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(back.dt == doctest::Approx(grid.dt).epsilon(1e-15));
}

TEST_CASE("precondition violations are configuration errors") {
    const ModelSpec model = get_benchmark("logistic");
    CHECK_THROWS_AS((void)integrate(model, model.true_params, model.u0, 0.0, 0.0, 10),
                    ConfigError);
    CHECK_THROWS_AS((void)integrate(model, model.true_params, model.u0, 0.0, 1.0, 1),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)integrate(model, model.true_params, model.u0, 0.0, 1.0, 10, 0),
        ConfigError);
}
