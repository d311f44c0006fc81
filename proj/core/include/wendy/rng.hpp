#pragma once

#include <cstdint>

namespace wendy {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), accurate to ~1 ulp after a Halley
/// refinement. Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

/// Counter-style splittable generator (splitmix64). One instance per
/// replicate stream; draws are reproducible bitwise for a given seed and do
/// not depend on any other stream.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform01();

    /// Standard normal draw via inverse CDF (one uniform per variate).
    double normal();

    /// Normal conditioned on exceeding `lower`, via inverse CDF on the
    /// restricted interval; no rejection loop.
    double truncated_normal_above(double lower);

  private:
    std::uint64_t state_;
};

/// Derives the per-replicate stream seed from a base seed. Streams for
/// distinct replicates are decorrelated by the splitmix64 finalizer.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t replicate);

}  // namespace wendy
