#include <benchmark/benchmark.h>

#include "wendy/estimator.hpp"
#include "wendy/harness.hpp"
#include "wendy/models.hpp"
#include "wendy/noise.hpp"
#include "wendy/rng.hpp"
#include "wendy/simulate.hpp"
#include "wendy/weakform.hpp"

namespace {

wendy::StateGrid noisy_benchmark(const std::string& name, double gamma) {
    const wendy::ModelSpec model = wendy::get_benchmark(name);
    const wendy::StateGrid truth =
        wendy::integrate(model, model.true_params, model.u0, 0.0, model.default_T,
                         model.default_points - 1);
    wendy::NoiseConfig nc;
    nc.kind = wendy::NoiseKind::AdditiveNormal;
    nc.sigmas = wendy::calibrate_sigma(nc.kind, truth, gamma);
    nc.seed = 1;
    return wendy::add_noise(truth, nc);
}

void BM_Integrate(benchmark::State& state) {
    const wendy::ModelSpec model = wendy::get_benchmark("hindmarsh_rose");
    for (auto _ : state) {
        benchmark::DoNotOptimize(wendy::integrate(model, model.true_params, model.u0,
                                                  0.0, model.default_T,
                                                  model.default_points - 1));
    }
}
BENCHMARK(BM_Integrate);

void BM_Assemble(benchmark::State& state) {
    const wendy::ModelSpec model = wendy::get_benchmark("lotka_volterra");
    const wendy::StateGrid data = noisy_benchmark("lotka_volterra", 0.1);
    const int mt = wendy::default_radius_mult(data.points());
    const wendy::TestFunctionBasis basis =
        wendy::build_basis(data, wendy::default_center_count(data.points(), mt), mt);
    const Eigen::VectorXd q = wendy::quadrature_weights(data.segments(), data.dt);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wendy::assemble(
            basis, q, wendy::eval_features(model, data.states), data.states));
    }
}
BENCHMARK(BM_Assemble);

void BM_ResidualCovariance(benchmark::State& state) {
    const wendy::ModelSpec model = wendy::get_benchmark("lotka_volterra");
    const wendy::StateGrid data = noisy_benchmark("lotka_volterra", 0.1);
    const int mt = wendy::default_radius_mult(data.points());
    const wendy::TestFunctionBasis basis =
        wendy::build_basis(data, wendy::default_center_count(data.points(), mt), mt);
    const Eigen::VectorXd q = wendy::quadrature_weights(data.segments(), data.dt);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wendy::residual_covariance(model, data.states,
                                                            model.true_params, basis,
                                                            q));
    }
}
BENCHMARK(BM_ResidualCovariance);

void BM_Fit(benchmark::State& state) {
    const char* names[] = {"logistic", "lotka_volterra", "fitzhugh_nagumo",
                           "hindmarsh_rose", "ptb"};
    const wendy::ModelSpec model = wendy::get_benchmark(names[state.range(0)]);
    const wendy::StateGrid data = noisy_benchmark(model.name, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wendy::fit(model, data));
    }
    state.SetLabel(model.name);
}
BENCHMARK(BM_Fit)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
