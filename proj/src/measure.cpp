#include "backfrac/measure.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace backfrac::measure {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t SplitMix64::next() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform_pm1() {
    return double(next() >> 11) * 0x1p-52 - 1.0;
}

SplitMix64 stream_generator(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 seeder(seed);
    return SplitMix64(seeder.next() + stream * kGolden);
}

spectral::GridField add_noise(const spectral::GridField& clean, const NoiseSpec& spec) {
    if (!(spec.eps >= 0.0)) throw std::invalid_argument("add_noise: eps must be >= 0");
    if (spec.eps == 0.0) return clean;

    spectral::GridField noise{clean.grid, std::vector<double>(clean.values.size())};
    double nn = 0.0;
    std::uint64_t stream = spec.stream;
    do {  // all-zero draws resample on the next stream
        auto rng = stream_generator(spec.seed, stream++);
        for (auto& v : noise.values) v = rng.uniform_pm1();
        nn = spectral::l2_norm(noise);
    } while (nn == 0.0);

    spectral::GridField out = clean;
    const double scale = spec.eps / nn;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += scale * noise.values[i];
    return out;
}

double rel_error(const spectral::GridField& u_exact, const spectral::GridField& v) {
    if (u_exact.grid.get() != v.grid.get() || u_exact.values.size() != v.values.size())
        throw std::invalid_argument("rel_error: fields on different grids");
    const double nu = spectral::l2_norm(u_exact);
    if (nu == 0.0) throw std::invalid_argument("rel_error: zero reference field");
    double acc = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double d = u_exact.values[i] - v.values[i];
        acc += u_exact.grid->weights[i] * d * d;
    }
    return 100.0 * std::sqrt(acc) / nu;
}

double rate_fit(const std::vector<std::pair<double, double>>& pairs) {
    std::set<double> distinct;
    for (const auto& [eps, err] : pairs) {
        if (!(eps > 0.0) || !(err > 0.0))
            throw std::invalid_argument("rate_fit: eps and err must be positive");
        distinct.insert(eps);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("rate_fit: need at least 3 distinct eps values");
    double sx = 0, sy = 0;
    for (const auto& [eps, err] : pairs) {
        sx += std::log(eps);
        sy += std::log(err);
    }
    const double mx = sx / pairs.size(), my = sy / pairs.size();
    double sxx = 0, sxy = 0;
    for (const auto& [eps, err] : pairs) {
        const double dx = std::log(eps) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    return sxy / sxx;
}

}  // namespace backfrac::measure
