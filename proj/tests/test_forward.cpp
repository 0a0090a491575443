#include "backfrac/forward.hpp"

#include "backfrac/mlf.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace backfrac;
using namespace backfrac::forward;

TEST_SUITE("forward") {

TEST_CASE("example-1 field matches the per-mode decay formula") {
    auto sys = spectral::laplacian_1d(5, 201);
    const ProblemSpec spec{0.5, 1.0, sys, InitialCondition::example1(), true};
    const double t = 0.3;
    auto field = spectral::synthesize(forward_solve(spec, t, 3));
    const double tg = std::sqrt(t);
    for (std::size_t i = 0; i < field.values.size(); i += 9) {
        const double x = sys->grid().xs[i];
        const double want = mlf::mlf_eval(0.5, 1.0, -tg) * std::sin(x) +
                            mlf::mlf_eval(0.5, 1.0, -4 * tg) * std::sin(2 * x) +
                            mlf::mlf_eval(0.5, 1.0, -9 * tg) * std::sin(3 * x);
        CHECK(std::fabs(field.values[i] - want) < 1e-12);
    }
}

TEST_CASE("t=0 returns the initial coefficients unchanged") {
    auto sys = spectral::laplacian_1d(4, 101);
    const ProblemSpec spec{0.7, 2.0, sys, InitialCondition::example1(), true};
    auto c = forward_solve(spec, 0.0, 4);
    const double s = std::sqrt(M_PI / 2.0);
    CHECK(c.values[0] == s);
    CHECK(c.values[1] == s);
    CHECK(c.values[2] == s);
    CHECK(c.values[3] == 0.0);
}

TEST_CASE("single mode matches the erfcx oracle") {
    auto sys = spectral::laplacian_1d(2, 101);
    spectral::GridField f{sys->grid_ptr(), std::vector<double>(sys->grid().nodes())};
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = sys->eigenfunction(1, i);
    const ProblemSpec spec{0.5, 1.0, sys, InitialCondition::from_field(f), true};
    auto c = forward_solve(spec, 1.0, 2);  // lambda_2 = 4
    const double want = (double)oracles::erfcx_ld(4.0L);
    CHECK(std::fabs(c.values[1] - want) / want < 1e-6);  // quadrature-limited
    CHECK(std::fabs(c.values[0]) < 1e-10);
}

TEST_CASE("coefficients decay in t, norm contracts") {
    auto sys = spectral::laplacian_1d(5, 201);
    const ProblemSpec spec{0.6, 1.0, sys, InitialCondition::example1(), true};
    double prev_norm = 1e300;
    for (double t : {0.0, 0.05, 0.2, 0.5, 1.0}) {
        auto c = forward_solve(spec, t, 3);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::fabs(c.values[k]) <= std::sqrt(M_PI / 2) + 1e-15);
        const double n = spectral::coeff_norm(c);
        CHECK(n <= prev_norm + 1e-15);
        prev_norm = n;
    }
    CHECK(spectral::coeff_norm(forward_solve(spec, 1.0, 3)) <=
          spectral::coeff_norm(forward_solve(spec, 0.0, 3)));
}

TEST_CASE("example-1 truncation is exact beyond three modes") {
    auto sys = spectral::laplacian_1d(8, 201);
    const ProblemSpec spec{0.5, 1.0, sys, InitialCondition::example1(), true};
    auto f3 = spectral::synthesize(forward_solve(spec, 0.8, 3));
    auto f8 = spectral::synthesize(forward_solve(spec, 0.8, 8));
    for (std::size_t i = 0; i < f3.values.size(); ++i)
        CHECK(std::fabs(f3.values[i] - f8.values[i]) < 1e-12);
}

TEST_CASE("example-3 initial coefficients") {
    auto sys = spectral::laplacian_2d(3, 3, 41);
    auto u0 = InitialCondition::example3();
    auto c = u0.coefficients(sys, sys->mode_count(), false);
    for (std::size_t k = 0; k < sys->mode_count(); ++k) {
        const auto& md = sys->modes()[k];
        const double want = (md.m == 1 && (md.n == 1 || md.n == 2)) ? M_PI / 2 : 0.0;
        CHECK(c.values[k] == want);
        // quadrature agrees
    }
    auto cq = u0.coefficients(sys, sys->mode_count(), true);
    for (std::size_t k = 0; k < sys->mode_count(); ++k)
        CHECK(std::fabs(cq.values[k] - c.values[k]) < 1e-6);
}

TEST_CASE("preconditions are enforced") {
    auto sys = spectral::laplacian_1d(3, 101);
    const ProblemSpec spec{0.5, 1.0, sys, InitialCondition::example1(), true};
    CHECK_THROWS_AS(forward_solve(spec, -0.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(forward_solve(spec, 1.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(forward_solve(spec, 0.5, 4), std::invalid_argument);
    ProblemSpec bad = spec;
    bad.gamma = 1.0;  // fractional solver path requires gamma in (0,1)
    CHECK_THROWS_AS(forward_solve(bad, 0.5, 3), std::invalid_argument);
}

}  // TEST_SUITE
