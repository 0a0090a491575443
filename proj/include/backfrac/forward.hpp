#pragma once

#include "backfrac/spectral.hpp"

#include <memory>
#include <optional>

namespace backfrac::forward {

// Initial condition, either one of the closed-form families used by the
// experiment presets (exact coefficients available) or raw grid samples.
class InitialCondition {
  public:
    // u0(x) = sin x + sin 2x + sin 3x on (0,pi)
    static InitialCondition example1();
    // triangle: u0(x) = x for x < pi/2, pi - x otherwise
    static InitialCondition example2();
    // u0(x,y) = sin x sin y + sin 2x sin y on (0,pi)^2
    static InitialCondition example3();
    static InitialCondition from_field(spectral::GridField field);

    bool has_analytic_coeffs() const { return kind_ != Kind::Samples; }
    int dim() const { return kind_ == Kind::Example3 ? 2 : (kind_ == Kind::Samples ? sample_dim_ : 1); }

    double analytic_coefficient(const spectral::Mode& mode) const;

    // Exact (or stored) values on the eigensystem's grid.
    spectral::GridField sample(const std::shared_ptr<const spectral::EigenSystem>& sys) const;

    // <u0, phi_k> for the first n modes; closed form when available and
    // use_quadrature is false, quadrature projection of the samples otherwise.
    spectral::SpectralCoeffs coefficients(const std::shared_ptr<const spectral::EigenSystem>& sys,
                                          std::size_t n, bool use_quadrature = false) const;

  private:
    enum class Kind { Example1, Example2, Example3, Samples };
    Kind kind_ = Kind::Example1;
    std::optional<spectral::GridField> samples_;
    int sample_dim_ = 1;
};

struct ProblemSpec {
    double gamma = 0.5;  // in (0,1)
    double T = 1.0;
    std::shared_ptr<const spectral::EigenSystem> sys;
    InitialCondition u0;
    bool analytic_coeffs = true;  // closed-form <u0,phi_n> when available

    void validate() const;
};

// Truncated eigenfunction expansion of the forward solution:
// coefficient k of u(t) is E_{gamma,1}(-lambda_k t^gamma) <u0, phi_k>.
spectral::SpectralCoeffs forward_solve(const ProblemSpec& spec, double t, std::size_t n_modes);

}  // namespace backfrac::forward
