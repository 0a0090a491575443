#include "backfrac/mlf.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace backfrac::mlf;

namespace {
double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
}
}  // namespace

TEST_SUITE("mlf") {

TEST_CASE("series values at zero") {
    CHECK(mlf_eval(0.5, 1.0, 0.0) == 1.0);
    CHECK(mlf_eval(0.5, 0.0, 0.0) == 0.0);  // 1/Gamma(0) convention
    CHECK(mlf_eval(0.3, 1.0, 0.0) == 1.0);
}

TEST_CASE("gamma=1 collapses to the exponential") {
    CHECK(rel_diff(mlf_eval(1.0, 1.0, -2.0), std::exp(-2.0)) < 1e-15);
    for (double z = -50.0; z <= 0.0; z += 2.5)
        CHECK(rel_diff(mlf_eval(1.0, 1.0, z), std::exp(z)) < 1e-12);
    // E_{1,0}(z) = z e^z
    CHECK(rel_diff(mlf_eval(1.0, 0.0, -3.0), -3.0 * std::exp(-3.0)) < 1e-14);
}

TEST_CASE("gamma=1/2 closed form e^{x^2} erfc(x)") {
    // spans all three evaluation routes
    for (double x : {0.1, 1.0, 2.0, 4.0, 4.99, 5.01, 8.0, 15.0, 30.0, 49.9, 50.1, 100.0, 1e4,
                     1e8, 1e10}) {
        const double got = mlf_eval(0.5, 1.0, -x);
        const double want = (double)oracles::erfcx_ld((long double)x);
        CHECK_MESSAGE(rel_diff(got, want) < 1e-11, "x=", x, " got=", got, " want=", want);
    }
}

TEST_CASE("gamma=1/2 beta=0 closed form x^2 erfcx(x) - x/sqrt(pi)") {
    for (double x : {0.3, 1.0, 3.0, 8.0, 30.0, 70.0}) {
        const long double want =
            (long double)x * x * oracles::erfcx_ld(x) - (long double)x / sqrtl((long double)M_PI);
        CHECK(rel_diff(mlf_eval(0.5, 0.0, -x), (double)want) < 1e-11);
    }
}

TEST_CASE("extended-precision series oracle, |z| <= 5") {
    for (double g : {0.35, 0.5, 0.65, 0.8, 0.95})
        for (double z : {-0.05, -0.7, -2.0, -3.7, -5.0})
            for (double beta : {1.0, 0.0}) {
                const double want = oracles::ml_series_mpfr(g, beta, z);
                const double got = mlf_eval(g, beta, z);
                CHECK_MESSAGE(rel_diff(got, want) < 1e-12, "g=", g, " beta=", beta, " z=", z,
                              " got=", got, " want=", want);
            }
}

TEST_CASE("oracle agreement through the contour region") {
    struct Pt { double g, z; };
    for (auto [g, z] : {Pt{0.5, -12.0}, Pt{0.5, -20.0}, Pt{0.6, -15.0}, Pt{0.75, -30.0},
                        Pt{0.9, -45.0}, Pt{0.95, -48.0}, Pt{0.45, -8.0}, Pt{0.2, -2.5}}) {
        for (double beta : {1.0, 0.0}) {
            const double want = oracles::ml_series_mpfr(g, beta, z);
            const double got = mlf_eval(g, beta, z);
            CHECK_MESSAGE(rel_diff(got, want) < 1e-11, "g=", g, " beta=", beta, " z=", z);
        }
    }
}

TEST_CASE("fractional beta inside [0,1]") {
    struct Pt { double g, b, z; };
    for (auto [g, b, z] : {Pt{0.6, 0.5, -2.0}, Pt{0.6, 0.5, -10.0}, Pt{0.8, 0.25, -4.8},
                           Pt{0.8, 0.25, -25.0}, Pt{0.5, 0.75, -18.0}, Pt{0.9, 0.9, -40.0}}) {
        const double want = oracles::ml_series_mpfr(g, b, z);
        const double got = mlf_eval(g, b, z);
        CHECK_MESSAGE(rel_diff(got, want) < 1e-11, "g=", g, " beta=", b, " z=", z);
    }
}

TEST_CASE("route cross-consistency at the cutovers") {
    // Taylor vs contour just inside the series region
    for (double g : {0.55, 0.7, 0.85, 0.99}) {
        double est = 0;
        const double tv = detail::taylor_series(g, 1.0, -4.5, &est);
        REQUIRE(est < 1e-13);
        CHECK(rel_diff(detail::contour_integral(g, 1.0, -4.5), tv) < 1e-12);
    }
    // asymptotic vs contour above the large-|z| cutoff
    for (double g : {0.3, 0.5, 0.75, 0.9}) {
        double est = 0;
        const double av = detail::asymptotic_series(g, 1.0, -60.0, &est);
        REQUIRE(est < 1e-12);
        CHECK(rel_diff(detail::contour_integral(g, 1.0, -60.0), av) < 1e-11);
    }
}

TEST_CASE("monotone decrease in |z| for beta=1") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ug(0.1, 1.0), ux(0.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const double g = ug(rng);
        double x1 = ux(rng), x2 = ux(rng);
        if (x1 > x2) std::swap(x1, x2);
        if (x2 - x1 < 1e-3) continue;
        const double e1 = mlf_eval(g, 1.0, -x1);
        const double e2 = mlf_eval(g, 1.0, -x2);
        CHECK(e1 > e2);
        CHECK(e1 <= 1.0);
        CHECK(e2 > 0.0);
    }
    // across the route cutovers
    double prev = mlf_eval(0.5, 1.0, 0.0);
    for (double x = 0.5; x < 120.0; x += 0.5) {
        const double cur = mlf_eval(0.5, 1.0, -x);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("lambda E(-lambda T^gamma) band stays bracketed") {
    for (double g : {0.5, 0.75}) {
        double lo = 1e300, hi = 0.0;
        for (int n = 1; n * n <= 10000; ++n) {
            const double lam = double(n) * n;
            const double v = lam * mlf_eval(g, 1.0, -lam);  // T = 1
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi / lo <= 20.0);
    }
}

TEST_CASE("(1 - z) E(z) envelope stays bracketed") {
    for (double g : {0.5, 0.75}) {
        double lo = 1e300, hi = 0.0;
        for (double lz = -4.0; lz <= 8.01; lz += 0.25) {  // z from -1e-4 down to -1e8
            const double z = -std::pow(10.0, lz);
            const double v = (1.0 - z) * mlf_eval(g, 1.0, z);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        // include z = 0
        lo = std::min(lo, 1.0);
        hi = std::max(hi, 1.0);
        CHECK(hi / lo <= 50.0);
    }
}

TEST_CASE("derivative identity against central differences") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ug(0.1, 0.95), us(-20.0, -0.2), ut(0.3, 2.0);
    for (int i = 0; i < 100; ++i) {
        const MlParams p{ug(rng), 1.0};
        const double s = us(rng), t = ut(rng);
        const auto [analytic, fd] = mlf_deriv_check(p, s, t);
        CHECK_MESSAGE(rel_diff(fd, analytic) < 1e-5, "gamma=", p.gamma, " s=", s, " t=", t);
    }
    SUBCASE("spec spot checks") {
        auto [a1, f1] = mlf_deriv_check(MlParams{0.5, 1.0}, -1.0, 1.0, 1e-6);
        CHECK(rel_diff(f1, a1) < 1e-5);
        auto [a2, f2] = mlf_deriv_check(MlParams{0.9, 1.0}, -10.0, 1.0, 1e-6);
        CHECK(rel_diff(f2, a2) < 1e-5);
        // gamma = 1: analytic side must equal e^{-1}
        auto [a3, f3] = mlf_deriv_check(MlParams{1.0, 1.0}, -1.0, 1.0, 1e-6);
        CHECK(rel_diff(a3, std::exp(-1.0)) < 1e-12);
        CHECK(rel_diff(f3, a3) < 1e-5);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(mlf_eval(0.0, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(mlf_eval(1.5, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(mlf_eval(0.5, 1.0, 0.5), std::domain_error);   // positive argument
    CHECK_THROWS_AS(mlf_eval(0.5, 2.0, -1.0), std::domain_error);  // beta outside [0,1]
    CHECK_THROWS_AS(mlf_eval(0.5, -0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(mlf_eval(1.0, 0.5, -1.0), std::domain_error);  // gamma=1 needs beta in {0,1}
    CHECK_THROWS_AS(mlf_deriv_check(MlParams{0.5, 1.0}, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mlf_deriv_check(MlParams{0.5, 1.0}, -1.0, -1.0), std::domain_error);
}

TEST_CASE("huge negative arguments stay accurate and fast") {
    // leading asymptotics: E_{g,1}(-x) ~ x^{-1}/Gamma(1-g)
    for (double g : {0.3, 0.5, 0.8}) {
        const double x = 1e10;
        const double lead = 1.0 / (x * std::tgamma(1.0 - g));
        CHECK(rel_diff(mlf_eval(g, 1.0, -x), lead) < 1e-9);
    }
}

}  // TEST_SUITE
