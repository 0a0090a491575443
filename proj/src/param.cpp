#include "backfrac/param.hpp"

#include "backfrac/errors.hpp"
#include "backfrac/regularize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace backfrac::param {

void RegConfig::validate() const {
    if (!(b >= 1.0)) throw config_error("regularization: b must be >= 1");
    if (!(p > 0.0)) throw config_error("regularization: p must be positive");
    if (!(tau > 1.0)) throw config_error("regularization: tau must be > 1");
    if (rule == Rule::Fixed && !(fixed_alpha > 0.0))
        throw config_error("regularization: fixed rule needs alpha > 0");
    if (n_inv == 0) throw config_error("regularization: n_inv must be >= 1");
}

double alpha_apriori(double eps, const RegConfig& cfg) {
    cfg.validate();
    if (!(eps > 0.0)) throw config_error("alpha_apriori: eps must be positive");
    if (!(cfg.E > eps))
        throw config_error("alpha_apriori: requires E > eps (E=" + std::to_string(cfg.E) +
                           ", eps=" + std::to_string(eps) + ")");
    const double expo = cfg.p < cfg.b ? cfg.b / (cfg.p + 1.0) : cfg.b / (cfg.b + 1.0);
    return std::pow(eps / cfg.E, expo);
}

double solve_discrepancy(const spectral::SpectralCoeffs& f, double b, double rho_target) {
    const double nf = spectral::coeff_norm(f);
    if (nf == 0.0) throw std::invalid_argument("solve_discrepancy: zero data");
    if (!(rho_target > 0.0 && rho_target < nf))
        throw infeasible_discrepancy("solve_discrepancy: target " + std::to_string(rho_target) +
                                     " outside (0, ||f||=" + std::to_string(nf) + ")");

    double lo = 1e-16, hi = 1e16;
    // rho is strictly increasing with limits 0 and ||f||, so a bracket always
    // exists; expand geometrically until it is certified.
    while (regularize::discrepancy(f, lo, b) > rho_target) {
        lo *= 1e-4;
        if (lo < 1e-300)
            throw numerical_error("solve_discrepancy: bracket expansion failed (low side)");
    }
    while (regularize::discrepancy(f, hi, b) < rho_target) {
        hi *= 1e4;
        if (hi > 1e300)
            throw infeasible_discrepancy("solve_discrepancy: target unreachable below alpha=1e300");
    }
    for (int i = 0; i < 62; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (regularize::discrepancy(f, mid, b) < rho_target)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

double alpha_aposteriori(const spectral::SpectralCoeffs& f, double eps, const RegConfig& cfg) {
    cfg.validate();
    if (!(eps > 0.0)) throw config_error("alpha_aposteriori: eps must be positive");
    const double nf = spectral::coeff_norm(f);
    if (nf == 0.0) throw config_error("alpha_aposteriori: degenerate (zero) data");
    if (!(cfg.tau * eps < nf))
        throw infeasible_discrepancy("alpha_aposteriori: tau*eps = " +
                                     std::to_string(cfg.tau * eps) +
                                     " >= ||f|| = " + std::to_string(nf));
    return solve_discrepancy(f, cfg.b, cfg.tau * eps);
}

}  // namespace backfrac::param
