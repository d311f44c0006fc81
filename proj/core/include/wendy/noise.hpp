#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "wendy/grid.hpp"

namespace wendy {

/// Noise distributions; codes match the data-generation algorithm's legend
/// (0 = additive normal, 1 = censored, 2 = truncated, 3 = multiplicative
/// log-normal).
enum class NoiseKind : int {
    AdditiveNormal = 0,
    CensoredNormal = 1,
    TruncatedNormal = 2,
    MultiplicativeLogNormal = 3,
};

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

struct NoiseConfig {
    NoiseKind kind = NoiseKind::AdditiveNormal;
    double gamma = 0.0;
    Eigen::VectorXd sigmas;  // per-state, calibrated
    std::uint64_t seed = 0;
};

/// Per-state sigma from the noise level gamma and the per-state range
/// r = max - min. Additive kinds: sigma = r * gamma. Log-normal: sigma solves
/// (e^{s^2}-1) e^{s^2} = r*gamma, in closed form via the quadratic in e^{s^2};
/// with mln_squared_convention the right side is (r*gamma)^2 instead.
/// A constant state (r = 0) gets sigma = 0.
Eigen::VectorXd calibrate_sigma(NoiseKind kind, const StateGrid& states, double gamma,
                                bool mln_squared_convention = false);

/// Applies one independent draw per (time, state) entry, in row-major entry
/// order, from the stream seeded by cfg.seed. Truncated noise is sampled by
/// inverse CDF on [-u*, inf) and requires nonnegative true states.
StateGrid add_noise(const StateGrid& states, const NoiseConfig& cfg);

/// ||u* - U||_rms / ||U||_rms over all entries.
double empirical_noise_ratio(const StateGrid& truth, const StateGrid& noisy);

/// Squared-convention diagnostic: E[(n - n*)^2] / ||n*||_rms^2, i.e. the mean
/// squared deviation over the squared RMS of the truth.
double empirical_noise_ratio_squared(const StateGrid& truth, const StateGrid& noisy);

/// Expected squared relative deviation E[(eps-1)^2] of a log-normal factor
/// eps = e^N, N ~ N(0, sigma): e^{s^2}(e^{s^2}-1) + (e^{s^2/2}-1)^2.
double lognormal_noise_ratio(double sigma);

}  // namespace wendy
