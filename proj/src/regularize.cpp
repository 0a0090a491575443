#include "backfrac/regularize.hpp"

#include "backfrac/mlf.hpp"

#include <cmath>
#include <stdexcept>

namespace backfrac::regularize {

namespace {

void check_alpha_b(double alpha, double b) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(b >= 1.0)) throw std::invalid_argument("b must be >= 1");
}

// alpha lambda^b / (1 + alpha lambda^b) without overflow
double b_complement(double lambda, double alpha, double b) {
    const double w = alpha * std::pow(lambda, b);
    if (std::isinf(w)) return 1.0;
    return w / (1.0 + w);
}

}  // namespace

double reg_lambda(double lambda, double alpha, double b) {
    if (!(lambda > 0.0)) throw std::invalid_argument("reg_lambda: lambda must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("reg_lambda: alpha must be >= 0");
    if (!(b >= 1.0)) throw std::invalid_argument("reg_lambda: b must be >= 1");
    const double w = alpha * std::pow(lambda, b);
    if (std::isinf(w)) return 0.0;
    return lambda / (1.0 + w);
}

spectral::SpectralCoeffs apply_B(const spectral::SpectralCoeffs& f, double alpha, double b) {
    check_alpha_b(alpha, b);
    spectral::SpectralCoeffs out = f;
    for (std::size_t k = 0; k < out.count(); ++k)
        out.values[k] /= 1.0 + alpha * std::pow(f.sys->lambda(k), b);
    return out;
}

spectral::SpectralCoeffs backward_solve(const spectral::SpectralCoeffs& f, double alpha, double b,
                                        double gamma, double T, double t, std::size_t n_inv) {
    check_alpha_b(alpha, b);
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("backward_solve: gamma must lie in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("backward_solve: T must be positive");
    if (!(t >= 0.0 && t <= T)) throw std::invalid_argument("backward_solve: t must lie in [0,T]");
    if (n_inv > f.count())
        throw std::invalid_argument("backward_solve: n_inv exceeds coefficient count");

    auto v = spectral::truncated(f, n_inv);
    const double tT = std::pow(T, gamma);
    const double tg = std::pow(t, gamma);
    for (std::size_t k = 0; k < n_inv; ++k) {
        const double la = reg_lambda(f.sys->lambda(k), alpha, b);
        // numerator and denominator evaluated separately; both lie in (0,1]
        // and their ratio is bounded because la <= alpha^{-1/b}
        const double num = (t == 0.0) ? 1.0 : mlf::mlf_eval(gamma, 1.0, -la * tg);
        const double den = mlf::mlf_eval(gamma, 1.0, -la * tT);
        v.values[k] *= num / den;
    }
    return v;
}

double discrepancy(const spectral::SpectralCoeffs& f, double alpha, double b) {
    check_alpha_b(alpha, b);
    double acc = 0.0;
    for (std::size_t k = 0; k < f.count(); ++k) {
        const double m = b_complement(f.sys->lambda(k), alpha, b);
        acc += m * m * f.values[k] * f.values[k];
    }
    return std::sqrt(acc);
}

std::vector<double> stability_ratio(const spectral::SpectralCoeffs& f,
                                    const std::vector<double>& alphas, double b, double gamma,
                                    double T) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0))
            throw std::invalid_argument("stability_ratio: alphas must be positive");
        if (i > 0 && alphas[i] >= alphas[i - 1])
            throw std::invalid_argument("stability_ratio: alphas must be descending");
    }
    const double nf = spectral::coeff_norm(f);
    std::vector<double> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        const auto v0 = backward_solve(f, a, b, gamma, T, 0.0, f.count());
        out.push_back(spectral::coeff_norm(v0) / ((1.0 + std::pow(a, -1.0 / b)) * nf));
    }
    return out;
}

}  // namespace backfrac::regularize
