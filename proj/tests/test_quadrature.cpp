#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsoc/errors.hpp"
#include "fsoc/quadrature.hpp"

using namespace fsoc;

TEST_CASE("polynomials are exact") {
    auto cubic = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
    const auto r = quadrature::integrate(cubic, -1.0, 2.0);
    CHECK(r.value == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("gaussian integral over a wide range") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    const auto r = quadrature::integrate(gauss, -12.0, 12.0);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("mild endpoint singularity x^-0.3") {
    auto f = [](double x) { return std::pow(x, -0.3); };
    quadrature::Options opts;
    opts.rel_tol = 1e-10;
    const auto r = quadrature::integrate(f, 0.0, 1.0, opts);
    CHECK(r.value == doctest::Approx(1.0 / 0.7).epsilon(1e-9));
}

TEST_CASE("segmented integration matches single-range") {
    auto f = [](double x) { return std::sin(x) * std::exp(-x); };
    const auto a = quadrature::integrate(f, 0.0, 20.0);
    const auto b = quadrature::integrate_segmented(f, {0.0, 0.01, 1.0, 5.0, 20.0});
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    // Exact value 1/2 - e^-20 (sin 20 + cos 20)/2, i.e. 0.5 up to ~1.4e-9.
    CHECK(a.value == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("interval budget exhaustion raises") {
    // A strong endpoint singularity cannot meet 1e-12 with five intervals.
    auto f = [](double x) { return std::pow(x, -0.9); };
    quadrature::Options opts;
    opts.rel_tol = 1e-12;
    opts.max_intervals = 5;
    CHECK_THROWS_AS(quadrature::integrate(f, 0.0, 1.0, opts), non_convergence_error);
}

TEST_CASE("argument validation") {
    auto f = [](double) { return 1.0; };
    CHECK_THROWS_AS(quadrature::integrate(f, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quadrature::integrate_segmented(f, {1.0}), std::invalid_argument);
}
