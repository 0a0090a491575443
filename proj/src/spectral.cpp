#include "backfrac/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace backfrac::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Grid> make_grid_1d(int n_grid) {
    if (n_grid < 3) throw std::invalid_argument("grid needs at least 3 nodes");
    auto g = std::make_shared<Grid>();
    g->dim = 1;
    g->xs.resize(n_grid);
    g->weights.resize(n_grid);
    const double h = kPi / (n_grid - 1);
    for (int i = 0; i < n_grid; ++i) {
        g->xs[i] = i * h;
        g->weights[i] = (i == 0 || i == n_grid - 1) ? h / 2 : h;
    }
    return g;
}

std::shared_ptr<const Grid> make_grid_2d(int n_grid) {
    if (n_grid < 3) throw std::invalid_argument("grid needs at least 3 nodes");
    auto g = std::make_shared<Grid>();
    g->dim = 2;
    const double h = kPi / (n_grid - 1);
    g->xs.resize(n_grid);
    g->ys.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) g->xs[i] = g->ys[i] = i * h;
    g->weights.resize((std::size_t)n_grid * n_grid);
    auto w1 = [&](int i) { return (i == 0 || i == n_grid - 1) ? h / 2 : h; };
    for (int i = 0; i < n_grid; ++i)
        for (int j = 0; j < n_grid; ++j)
            g->weights[(std::size_t)i * n_grid + j] = w1(i) * w1(j);
    return g;
}

std::vector<std::vector<double>> sin_tables(const std::vector<double>& axis, int max_order) {
    std::vector<std::vector<double>> t(max_order);
    for (int n = 1; n <= max_order; ++n) {
        t[n - 1].resize(axis.size());
        for (std::size_t i = 0; i < axis.size(); ++i) t[n - 1][i] = std::sin(n * axis[i]);
    }
    return t;
}

}  // namespace

EigenSystem::EigenSystem(std::shared_ptr<const Grid> grid, std::vector<Mode> modes)
    : grid_(std::move(grid)), modes_(std::move(modes)) {
    int max_n = 0, max_m = 0;
    for (const auto& md : modes_) {
        max_n = std::max(max_n, md.n);
        max_m = std::max(max_m, md.m);
    }
    sin_x_ = sin_tables(grid_->xs, max_n);
    if (grid_->dim == 2) sin_y_ = sin_tables(grid_->ys, max_m);
}

double EigenSystem::eigenfunction(std::size_t k, std::size_t node) const {
    const Mode& md = modes_[k];
    if (grid_->dim == 1) return std::sqrt(2.0 / kPi) * sin_x_[md.n - 1][node];
    const std::size_t ny = grid_->ys.size();
    return (2.0 / kPi) * sin_x_[md.n - 1][node / ny] * sin_y_[md.m - 1][node % ny];
}

std::shared_ptr<const EigenSystem> laplacian_1d(int n_modes, int n_grid) {
    if (n_modes < 1) throw std::invalid_argument("laplacian_1d: n_modes must be >= 1");
    std::vector<Mode> modes(n_modes);
    for (int n = 1; n <= n_modes; ++n) modes[n - 1] = {n, 0, double(n) * n};
    return std::make_shared<EigenSystem>(make_grid_1d(n_grid), std::move(modes));
}

std::shared_ptr<const EigenSystem> laplacian_2d(int n_max, int m_max, int n_grid) {
    if (n_max < 1 || m_max < 1)
        throw std::invalid_argument("laplacian_2d: mode bounds must be >= 1");
    std::vector<Mode> modes;
    modes.reserve((std::size_t)n_max * m_max);
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= m_max; ++m) modes.push_back({n, m, double(n) * n + double(m) * m});
    // ties (lambda_{nm} = lambda_{mn}) broken lexicographically on (n, m)
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.n != b.n) return a.n < b.n;
        return a.m < b.m;
    });
    return std::make_shared<EigenSystem>(make_grid_2d(n_grid), std::move(modes));
}

SpectralCoeffs project(const GridField& field, const std::shared_ptr<const EigenSystem>& sys,
                       std::size_t n) {
    if (field.grid.get() != sys->grid_ptr().get())
        throw std::invalid_argument("project: field and eigensystem use different grids");
    if (field.values.size() != field.grid->nodes())
        throw std::invalid_argument("project: field size does not match grid");
    if (n > sys->mode_count())
        throw std::invalid_argument("project: more coefficients requested than modes");
    SpectralCoeffs c{sys, std::vector<double>(n)};
    const auto& w = field.grid->weights;
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            acc += w[i] * field.values[i] * sys->eigenfunction(k, i);
        c.values[k] = acc;
    }
    return c;
}

GridField synthesize(const SpectralCoeffs& coeffs) {
    const auto& sys = *coeffs.sys;
    GridField f{sys.grid_ptr(), std::vector<double>(sys.grid().nodes(), 0.0)};
    for (std::size_t k = 0; k < coeffs.count(); ++k) {
        const double c = coeffs.values[k];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            f.values[i] += c * sys.eigenfunction(k, i);
    }
    return f;
}

double norm_p(const SpectralCoeffs& coeffs, double p) {
    if (!(p >= 0.0)) throw std::invalid_argument("norm_p: p must be >= 0");
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs.count(); ++k) {
        const double lp = std::pow(coeffs.sys->lambda(k), p);
        acc += lp * lp * coeffs.values[k] * coeffs.values[k];
    }
    return std::sqrt(acc);
}

double l2_norm(const GridField& field) {
    double acc = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        acc += field.grid->weights[i] * field.values[i] * field.values[i];
    return std::sqrt(acc);
}

double coeff_norm(const SpectralCoeffs& coeffs) {
    double acc = 0.0;
    for (double c : coeffs.values) acc += c * c;
    return std::sqrt(acc);
}

SpectralCoeffs truncated(const SpectralCoeffs& coeffs, std::size_t n) {
    if (n > coeffs.count()) throw std::invalid_argument("truncated: n exceeds coefficient count");
    return {coeffs.sys, std::vector<double>(coeffs.values.begin(), coeffs.values.begin() + n)};
}

}  // namespace backfrac::spectral
