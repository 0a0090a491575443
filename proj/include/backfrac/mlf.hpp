#pragma once

#include <utility>

namespace backfrac::mlf {

// Parameters of the two-parameter Mittag-Leffler function E_{gamma,beta}.
// Supported domain: gamma in (0,1], beta in [0,1], argument z <= 0.
// gamma = 1 is admitted for oracle cross-checks only (beta in {0,1}).
struct MlParams {
    double gamma;
    double beta = 1.0;
};

struct EvalOptions {
    double series_cutoff = 5.0;   // Taylor series used for |z| below this (gamma permitting)
    double asym_cutoff = 50.0;    // asymptotic expansion tried for |z| above this
    double target_rel_err = 1e-12;
};

// E_{gamma,beta}(z) for z <= 0 to ~1e-12 relative accuracy.
// Throws std::domain_error outside the supported parameter domain.
double mlf_eval(const MlParams& params, double z, const EvalOptions& opt = {});
double mlf_eval(double gamma, double beta, double z);

// Returns {analytic, finite_difference} for the derivative identity
//   d/ds E_{gamma,1}(s t^gamma) = E_{gamma,0}(s t^gamma) / (gamma * s),
// the analytic side evaluated directly and the left side by a central
// difference with step h. Test instrumentation.
std::pair<double, double> mlf_deriv_check(const MlParams& params, double s, double t,
                                          double h = 1e-6);

namespace detail {

// Individual evaluation routes, exposed for cross-path consistency tests.
// Each returns its value; `est_rel_err` (when non-null) receives an error
// estimate used by the route selector.
double taylor_series(double gamma, double beta, double z, double* est_rel_err);
double asymptotic_series(double gamma, double beta, double z, double* est_rel_err);
double contour_integral(double gamma, double beta, double z);

long double recip_gamma(long double x);  // 1/Gamma(x), 0 at the poles
long double sin_pi(long double x);

}  // namespace detail

}  // namespace backfrac::mlf
