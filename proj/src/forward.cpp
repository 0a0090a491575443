#include "backfrac/forward.hpp"

#include "backfrac/mlf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace backfrac::forward {

namespace {
constexpr double kPi = std::numbers::pi;
}

InitialCondition InitialCondition::example1() {
    InitialCondition u;
    u.kind_ = Kind::Example1;
    return u;
}

InitialCondition InitialCondition::example2() {
    InitialCondition u;
    u.kind_ = Kind::Example2;
    return u;
}

InitialCondition InitialCondition::example3() {
    InitialCondition u;
    u.kind_ = Kind::Example3;
    return u;
}

InitialCondition InitialCondition::from_field(spectral::GridField field) {
    InitialCondition u;
    u.kind_ = Kind::Samples;
    u.sample_dim_ = field.grid->dim;
    u.samples_ = std::move(field);
    return u;
}

double InitialCondition::analytic_coefficient(const spectral::Mode& mode) const {
    switch (kind_) {
        case Kind::Example1:
            return mode.n <= 3 ? std::sqrt(kPi / 2) : 0.0;
        case Kind::Example2: {
            // sin(n pi / 2) is the exact 4-cycle 1, 0, -1, 0
            static constexpr double kSinHalfPi[4] = {0.0, 1.0, 0.0, -1.0};
            const double n = mode.n;
            return 2.0 * std::sqrt(2.0) / (n * n * std::sqrt(kPi)) * kSinHalfPi[mode.n % 4];
        }
        case Kind::Example3:
            return (mode.m == 1 && (mode.n == 1 || mode.n == 2)) ? kPi / 2 : 0.0;
        case Kind::Samples:
            break;
    }
    throw std::logic_error("analytic_coefficient: sampled initial condition");
}

spectral::GridField InitialCondition::sample(
    const std::shared_ptr<const spectral::EigenSystem>& sys) const {
    const auto& grid = sys->grid();
    if (kind_ == Kind::Samples) {
        if (samples_->grid.get() != sys->grid_ptr().get())
            throw std::invalid_argument("initial condition sampled on a different grid");
        return *samples_;
    }
    if (dim() != grid.dim)
        throw std::invalid_argument("initial condition dimension does not match grid");
    spectral::GridField f{sys->grid_ptr(), std::vector<double>(grid.nodes())};
    if (grid.dim == 1) {
        for (std::size_t i = 0; i < grid.nodes(); ++i) {
            const double x = grid.xs[i];
            f.values[i] = kind_ == Kind::Example1
                              ? std::sin(x) + std::sin(2 * x) + std::sin(3 * x)
                              : (x < kPi / 2 ? x : kPi - x);
        }
    } else {
        const std::size_t ny = grid.ys.size();
        for (std::size_t i = 0; i < grid.nodes(); ++i) {
            const double x = grid.xs[i / ny];
            const double y = grid.ys[i % ny];
            f.values[i] = std::sin(x) * std::sin(y) + std::sin(2 * x) * std::sin(y);
        }
    }
    return f;
}

spectral::SpectralCoeffs InitialCondition::coefficients(
    const std::shared_ptr<const spectral::EigenSystem>& sys, std::size_t n,
    bool use_quadrature) const {
    if (n > sys->mode_count())
        throw std::invalid_argument("coefficients: more modes requested than available");
    if (!has_analytic_coeffs() || use_quadrature) return spectral::project(sample(sys), sys, n);
    spectral::SpectralCoeffs c{sys, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) c.values[k] = analytic_coefficient(sys->modes()[k]);
    return c;
}

void ProblemSpec::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("ProblemSpec: gamma must lie in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("ProblemSpec: T must be positive");
    if (!sys) throw std::invalid_argument("ProblemSpec: missing eigensystem");
}

spectral::SpectralCoeffs forward_solve(const ProblemSpec& spec, double t, std::size_t n_modes) {
    spec.validate();
    if (!(t >= 0.0 && t <= spec.T))
        throw std::invalid_argument("forward_solve: t must lie in [0,T]");
    if (n_modes > spec.sys->mode_count())
        throw std::invalid_argument("forward_solve: n_modes exceeds available modes");
    auto c = spec.u0.coefficients(spec.sys, n_modes, !spec.analytic_coeffs);
    if (t == 0.0) return c;
    const double tg = std::pow(t, spec.gamma);
    for (std::size_t k = 0; k < n_modes; ++k)
        c.values[k] *= mlf::mlf_eval(spec.gamma, 1.0, -spec.sys->lambda(k) * tg);
    return c;
}

}  // namespace backfrac::forward
