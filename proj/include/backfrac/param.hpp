#pragma once

#include "backfrac/spectral.hpp"

#include <cstddef>

namespace backfrac::param {

enum class Rule { APriori, APosteriori, Fixed };

struct RegConfig {
    double b = 4.0;
    double p = 3.0;    // smoothness exponent of the source condition
    double E = 0.0;    // a priori bound ||u(0)||_p <= E; 0 = fill in from u0
    double tau = 1.05; // discrepancy factor, > 1
    Rule rule = Rule::APriori;
    double fixed_alpha = 0.0;
    std::size_t n_inv = 5;

    void validate() const;
};

// Theorem-2 rule: (eps/E)^{b/(p+1)} for p < b, (eps/E)^{b/(b+1)} for p >= b.
// Requires 0 < eps < E.
double alpha_apriori(double eps, const RegConfig& cfg);

// Theorem-3 rule: the unique alpha with ||B_alpha f - f|| = tau * eps over the
// given coefficients. Requires f != 0 and tau*eps < ||f||.
double alpha_aposteriori(const spectral::SpectralCoeffs& f, double eps, const RegConfig& cfg);

// Root of discrepancy(f, alpha, b) = rho_target for rho_target in (0, ||f||):
// geometric bracket expansion from [1e-16, 1e16] followed by bisection on
// log(alpha). Shared by alpha_aposteriori and the harness's grid-residual
// variant of the discrepancy equation.
double solve_discrepancy(const spectral::SpectralCoeffs& f, double b, double rho_target);

}  // namespace backfrac::param
