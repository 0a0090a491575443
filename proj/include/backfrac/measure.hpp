#pragma once

#include "backfrac/spectral.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace backfrac::measure {

// SplitMix64: the fixed, portable generator behind all noise draws. Streams
// are derived from (seed, stream index) so concurrent runs stay disjoint and
// CSV outputs reproduce bit-for-bit across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();
    // uniform in [-1, 1), 53-bit resolution
    double uniform_pm1();

  private:
    std::uint64_t state_;
};

SplitMix64 stream_generator(std::uint64_t seed, std::uint64_t stream);

struct NoiseSpec {
    double eps = 0.0;  // exact quadrature-L2 norm of the perturbation
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// clean + delta with ||delta|| = eps exactly (i.i.d. uniform[-1,1) node noise
// rescaled); eps = 0 returns clean unchanged. Deterministic in (spec, clean).
spectral::GridField add_noise(const spectral::GridField& clean, const NoiseSpec& spec);

// Relative quadrature-L2 error in percent: ||u - v|| / ||u|| * 100.
double rel_error(const spectral::GridField& u_exact, const spectral::GridField& v);

// Least-squares slope of log(err) against log(eps). Needs >= 3 pairs with
// distinct positive eps and positive err.
double rate_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace backfrac::measure
