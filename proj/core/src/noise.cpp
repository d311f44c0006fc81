#include "wendy/noise.hpp"

#include <cmath>
#include <string>

#include "wendy/errors.hpp"
#include "wendy/rng.hpp"

namespace wendy {

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "normal") return NoiseKind::AdditiveNormal;
    if (name == "acn") return NoiseKind::CensoredNormal;
    if (name == "atn") return NoiseKind::TruncatedNormal;
    if (name == "mln") return NoiseKind::MultiplicativeLogNormal;
    throw ConfigError("unknown noise kind '" + name + "'; expected normal|acn|atn|mln");
}

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::AdditiveNormal: return "normal";
        case NoiseKind::CensoredNormal: return "acn";
        case NoiseKind::TruncatedNormal: return "atn";
        case NoiseKind::MultiplicativeLogNormal: return "mln";
    }
    throw ConfigError("invalid noise kind code");
}

Eigen::VectorXd calibrate_sigma(NoiseKind kind, const StateGrid& states, double gamma,
                                bool mln_squared_convention) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("calibrate_sigma: gamma must lie in [0, 1]");
    }
    const Eigen::VectorXd range =
        states.states.colwise().maxCoeff() - states.states.colwise().minCoeff();
    Eigen::VectorXd sig(range.size());
    for (Eigen::Index i = 0; i < range.size(); ++i) {
        double target = range[i] * gamma;
        if (kind == NoiseKind::MultiplicativeLogNormal) {
            if (mln_squared_convention) target *= target;
            // (x-1) x = target with x = e^{sigma^2}
            const double x = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * target));
            sig[i] = std::sqrt(std::log(x));
        } else {
            sig[i] = target;
        }
    }
    return sig;
}

StateGrid add_noise(const StateGrid& states, const NoiseConfig& cfg) {
    const int n = states.points();
    const int d = states.dim();
    if (cfg.sigmas.size() != d) {
        throw ConfigError("add_noise: sigmas not calibrated for this grid");
    }
    if (cfg.kind == NoiseKind::TruncatedNormal && states.states.minCoeff() < 0.0) {
        throw ConfigError(
            "add_noise: truncated noise requires nonnegative true states "
            "(truncation bound is -u*)");
    }

    StateGrid out = states;
    SplitMix64 rng(cfg.seed);
    for (int m = 0; m < n; ++m) {
        for (int i = 0; i < d; ++i) {
            const double s = cfg.sigmas[i];
            const double u_star = states.states(m, i);
            double v = u_star;
            switch (cfg.kind) {
                case NoiseKind::AdditiveNormal:
                    v = u_star + s * rng.normal();
                    break;
                case NoiseKind::CensoredNormal:
                    v = std::max(0.0, u_star + s * rng.normal());
                    break;
                case NoiseKind::TruncatedNormal:
                    if (s == 0.0) {
                        v = u_star;
                    } else {
                        v = u_star + s * rng.truncated_normal_above(-u_star / s);
                    }
                    break;
                case NoiseKind::MultiplicativeLogNormal:
                    v = std::exp(s * rng.normal()) * u_star;
                    break;
            }
            out.states(m, i) = v;
        }
    }
    return out;
}

namespace {

double rms(const Eigen::MatrixXd& x) {
    return std::sqrt(x.squaredNorm() / static_cast<double>(x.size()));
}

void require_congruent(const StateGrid& a, const StateGrid& b) {
    if (a.points() != b.points() || a.dim() != b.dim()) {
        throw ConfigError("noise ratio: grids are not congruent");
    }
}

}  // namespace

double empirical_noise_ratio(const StateGrid& truth, const StateGrid& noisy) {
    require_congruent(truth, noisy);
    const double denom = rms(noisy.states);
    if (denom == 0.0) {
        throw std::domain_error("empirical_noise_ratio: ||U||_rms is zero");
    }
    return rms(truth.states - noisy.states) / denom;
}

double empirical_noise_ratio_squared(const StateGrid& truth, const StateGrid& noisy) {
    require_congruent(truth, noisy);
    const double denom = truth.states.squaredNorm();
    if (denom == 0.0) {
        throw std::domain_error("empirical_noise_ratio_squared: ||u*||_rms is zero");
    }
    return (truth.states - noisy.states).squaredNorm() / denom;
}

double lognormal_noise_ratio(double sigma) {
    if (sigma < 0.0) throw ConfigError("lognormal_noise_ratio: sigma must be >= 0");
    const double s2 = sigma * sigma;
    const double e = std::exp(s2);
    const double half = std::expm1(0.5 * s2);
    return e * std::expm1(s2) + half * half;
}

}  // namespace wendy
