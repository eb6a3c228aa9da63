#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsoc/errors.hpp"
#include "fsoc/specfun.hpp"
#include "support/oracles.hpp"

using namespace fsoc;
using specfun::bessel_k;
using specfun::bessel_k_series;
using specfun::log_bessel_k;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("K_1/2 closed form") {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^-x, evaluated independently here.
    const double x = 1.0;
    const double expected = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
    CHECK(bessel_k_series(0.5, x) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::fabs(bessel_k_series(0.5, x) - 0.46106850444789456) < 1e-8);
}

TEST_CASE("K_v symmetry in the order sign") {
    const double a = bessel_k_series(0.69, 2.0);
    const double b = bessel_k_series(-0.69, 2.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK(a == doctest::Approx(0.12565389016239392).epsilon(1e-12));  // mpmath reference
}

TEST_CASE("series against the integral-representation oracle") {
    const double oracle = test::bessel_k_integral_oracle(0.69, 3.0);
    CHECK(std::fabs(bessel_k_series(0.69, 3.0) - oracle) < 1e-7);
    CHECK(bessel_k_series(0.69, 3.0) == doctest::Approx(0.037227512550895127).epsilon(1e-12));
}

TEST_CASE("three-term recurrence on a (v, x) grid") {
    // K_{v+1}(x) - K_{v-1}(x) = (2v/x) K_v(x), relative to the largest term.
    for (double v : {0.3, 0.69, 1.27, 1.9, 2.5}) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double k_up = bessel_k_series(v + 1.0, x);
            const double k_down = bessel_k_series(v - 1.0, x);
            const double k_mid = bessel_k_series(v, x);
            const double residual = k_up - k_down - (2.0 * v / x) * k_mid;
            CHECK(std::fabs(residual) <= 1e-6 * k_up);
        }
    }
}

TEST_CASE("near-integer orders are rejected") {
    CHECK_THROWS_AS(bessel_k_series(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_series(2.0 + 4e-10, 2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_series(-3.0, 2.0), std::domain_error);
    CHECK_NOTHROW(bessel_k_series(2.0 + 1e-5, 2.0));
}

TEST_CASE("series input validation and convergence error") {
    CHECK_THROWS_AS(bessel_k_series(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_k_series(0.5, -1.0), std::invalid_argument);
    specfun::SeriesControl tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(bessel_k_series(0.69, 9.0, tight), non_convergence_error);
    specfun::SeriesControl bad;
    bad.rel_tol = 2.0;
    CHECK_THROWS_AS(bessel_k_series(0.69, 1.0, bad), std::invalid_argument);
}

TEST_CASE("full-range bessel_k against mpmath references") {
    // Asymptotic branch (x >= 10).
    CHECK(bessel_k(0.69, 12.0) == doctest::Approx(2.2432037555261334e-6).epsilon(1e-9));
    CHECK(bessel_k(1.32, 25.0) == doctest::Approx(3.5845855174823798e-12).epsilon(1e-9));
    CHECK(bessel_k(2.5, 15.0) == doctest::Approx(1.2010945859989106e-7).epsilon(1e-9));
    // Deep in the underflow region only the log form survives.
    CHECK(log_bessel_k(1.32, 700.0) == doctest::Approx(-703.04868357548952).epsilon(1e-12));
    // Series/asymptotic seam.
    const double below = bessel_k(0.69, 9.9999);
    const double above = bessel_k(0.69, 10.0001);
    CHECK(below == doctest::Approx(above).epsilon(1e-6));
    // log and linear forms agree.
    CHECK(std::exp(log_bessel_k(0.9, 3.0)) == doctest::Approx(bessel_k(0.9, 3.0)).epsilon(1e-14));
}

TEST_CASE("asymptotic branch against the integral oracle") {
    for (double v : {0.69, 1.32, 2.2}) {
        for (double x : {10.0, 14.0, 22.0, 40.0}) {
            const double oracle = test::bessel_k_integral_oracle(v, x);
            CHECK(bessel_k(v, x) == doctest::Approx(oracle).epsilon(1e-8));
        }
    }
}

TEST_CASE("q_function basics") {
    CHECK(specfun::q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(specfun::q_function(1.7) + specfun::q_function(-1.7) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(specfun::q_function(2.0) == doctest::Approx(0.022750131948179207).epsilon(1e-12));
    // Monotone decreasing, range (0, 1).
    double prev = 1.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
        const double q = specfun::q_function(x);
        CHECK(q > 0.0);
        CHECK(q < 1.0);
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("finite-interval Q representation agrees with erfc route") {
    CHECK(std::fabs(specfun::q_function_craig(2.0) - specfun::q_function(2.0)) < 1e-10);
    for (double x = 0.0; x <= 8.0; x += 0.5)
        CHECK(std::fabs(specfun::q_function_craig(x) - specfun::q_function(x)) < 1e-12);
    CHECK_THROWS_AS(specfun::q_function_craig(-0.1), std::invalid_argument);
}

TEST_CASE("gamma and beta values") {
    CHECK(specfun::beta_fn(0.5, 0.5) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(specfun::gamma_fn(1.5) == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-14));

    // Independent Lanczos oracle for B(1.5, 8.5).
    const double oracle = std::exp(test::lanczos_log_gamma(1.5) + test::lanczos_log_gamma(8.5) -
                                   test::lanczos_log_gamma(10.0));
    CHECK(std::fabs(specfun::beta_fn(1.5, 8.5) - oracle) < 1e-10);
    CHECK(specfun::beta_fn(1.5, 8.5) == doctest::Approx(0.034274883229319796).epsilon(1e-12));
}

TEST_CASE("gamma poles and signs") {
    CHECK_THROWS_AS(specfun::gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma_fn(-3.0), std::domain_error);
    CHECK_THROWS_AS(specfun::beta_fn(-1.0, 2.0), std::invalid_argument);

    // Gamma alternates sign between negative integers.
    CHECK(specfun::gamma_fn(-0.32) < 0.0);
    CHECK(specfun::gamma_fn(-1.5) > 0.0);
    CHECK(specfun::gamma_fn(-1.5) == doctest::Approx(std::tgamma(-1.5)).epsilon(1e-13));

    const specfun::SignedLog g = specfun::log_gamma_signed(-0.32);
    CHECK(g.sign == -1.0);
    CHECK(g.sign * std::exp(g.log_abs) == doctest::Approx(std::tgamma(-0.32)).epsilon(1e-13));
}
