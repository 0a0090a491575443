#pragma once

#include "backfrac/spectral.hpp"

#include <vector>

namespace backfrac::regularize {

// lambda / (1 + alpha lambda^b): the spectrum of A_alpha = (I + alpha A^b)^{-1} A.
// Satisfies reg_lambda <= min(lambda, alpha^{-1/b}) for alpha > 0.
double reg_lambda(double lambda, double alpha, double b);

// Coefficient k multiplied by 1/(1 + alpha lambda_k^b), the spectrum of
// B_alpha = (I + alpha A^b)^{-1}.
spectral::SpectralCoeffs apply_B(const spectral::SpectralCoeffs& f, double alpha, double b);

// Explicit solution of the regularized backward problem: coefficient k of
// v_alpha(t) is E_{gamma,1}(-reg_lambda_k t^gamma) / E_{gamma,1}(-reg_lambda_k T^gamma)
// times f_k, over the first n_inv modes. At t = T this is exactly the
// truncation of f.
spectral::SpectralCoeffs backward_solve(const spectral::SpectralCoeffs& f, double alpha, double b,
                                        double gamma, double T, double t, std::size_t n_inv);

// rho(alpha) = ||B_alpha f - f|| over the given coefficients:
// sqrt(sum (alpha lambda^b / (1 + alpha lambda^b))^2 f_k^2).
// Strictly increasing in alpha, bounded above by ||f||.
double discrepancy(const spectral::SpectralCoeffs& f, double alpha, double b);

// ||v_alpha(0)|| / ((1 + alpha^{-1/b}) ||f||) per alpha; certifies the
// well-posedness stability bound. Alphas must be positive and descending.
std::vector<double> stability_ratio(const spectral::SpectralCoeffs& f,
                                    const std::vector<double>& alphas, double b, double gamma,
                                    double T);

}  // namespace backfrac::regularize
