// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "fsoc/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fsoc/errors.hpp"
#include "fsoc/quadrature.hpp"

namespace fsoc::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Argument where bessel_k/log_bessel_k switch from the power series to the
// large-x asymptotic expansion. Both routes carry ~1e-9 relative error or
// better at the seam for the orders this library works with (|v| <= ~3.5).
constexpr double kSeriesAsymptoticSwitch = 10.0;

void require_non_integer_order(double v) {
    if (std::fabs(v - std::round(v)) < kIntegerOrderTol)
        throw std::domain_error("bessel_k: order " + std::to_string(v) +
                                " is integer within tolerance; series form requires v not in Z");
}

// Scaled series core. Computes the signed log of K_v(x):
//   K_v(x) = pi / (2 sin(pi v)) * [ (x/2)^-v * SA - (x/2)^+v * SB ],
//   SA = sum_p (x^2/4)^p / (Gamma(p-v+1) p!),   SB likewise with +v.
// The (x/2)^{+-v} prefactors are kept in log space so tiny x at larger
// orders cannot overflow.
SignedLog bessel_k_series_core(double v, double x, const SeriesControl& ctrl) {
    require_non_integer_order(v);
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k: requires x > 0");
    if (ctrl.max_terms < 1 || !(ctrl.rel_tol > 0.0) || !(ctrl.rel_tol < 1.0))
        throw std::invalid_argument("bessel_k: invalid SeriesControl");

    const double q = 0.25 * x * x;

    const SignedLog g_minus = log_gamma_signed(1.0 - v);
    const SignedLog g_plus = log_gamma_signed(1.0 + v);
    double term_a = g_minus.sign * std::exp(-g_minus.log_abs);  // 1/Gamma(1-v)
    double term_b = g_plus.sign * std::exp(-g_plus.log_abs);    // 1/Gamma(1+v)
    double sum_a = term_a;
    double sum_b = term_b;

    bool converged = false;
    for (int p = 1; p <= ctrl.max_terms; ++p) {
        term_a *= q / (p * (p - v));
        term_b *= q / (p * (p + v));
        sum_a += term_a;
        sum_b += term_b;
        if (std::fabs(term_a) < ctrl.rel_tol * std::fabs(sum_a) &&
            std::fabs(term_b) < ctrl.rel_tol * std::fabs(sum_b)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw non_convergence_error("bessel_k series: max_terms=" +
                                    std::to_string(ctrl.max_terms) +
                                    " reached before rel_tol at x=" + std::to_string(x));

    // Signed log-sum of (x/2)^-v SA - (x/2)^+v SB.
    const double lh = std::log(0.5 * x);
    double log1 = -v * lh + std::log(std::fabs(sum_a));
    double sign1 = sum_a < 0.0 ? -1.0 : 1.0;
    double log2 = v * lh + std::log(std::fabs(sum_b));
    double sign2 = -(sum_b < 0.0 ? -1.0 : 1.0);
    if (log2 > log1) {
        std::swap(log1, log2);
        std::swap(sign1, sign2);
    }
    const double inner = 1.0 + (sign2 / sign1) * std::exp(log2 - log1);
    const double sin_piv = std::sin(kPi * v);
    const double log_k = std::log(kPi / (2.0 * std::fabs(sin_piv))) + log1 +
                         std::log(std::fabs(inner));
    const double sign_k = (sin_piv < 0.0 ? -1.0 : 1.0) * sign1 * (inner < 0.0 ? -1.0 : 1.0);
    return {log_k, sign_k};
}

// log K_v(x) from the large-x expansion
//   K_v(x) ~ sqrt(pi/(2x)) e^-x [1 + sum_k a_k], a_k = a_{k-1} (mu-(2k-1)^2)/(8kx),
// summed to its smallest term (the expansion is asymptotic).
double log_bessel_k_asymptotic(double v, double x) {
    const double mu = 4.0 * v * v;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::fabs(term);
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (std::fabs(term) > prev) break;  // divergent tail reached
        sum += term;
        prev = std::fabs(term);
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return 0.5 * std::log(kPi / (2.0 * x)) - x + std::log(sum);
}

}  // namespace

SignedLog log_gamma_signed(double x) {
    if (x > 0.0) return {std::lgamma(x), 1.0};
    if (x == std::floor(x)) throw std::domain_error("log_gamma_signed: pole at " + std::to_string(x));
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
    const double s = std::sin(kPi * x);
    return {std::log(kPi / std::fabs(s)) - std::lgamma(1.0 - x), s < 0.0 ? -1.0 : 1.0};
}

double bessel_k_series(double order, double x, const SeriesControl& ctrl) {
    const SignedLog k = bessel_k_series_core(order, x, ctrl);
    return k.sign * std::exp(k.log_abs);
}

double bessel_k(double order, double x, const SeriesControl& ctrl) {
    return std::exp(log_bessel_k(order, x, ctrl));
}

double log_bessel_k(double order, double x, const SeriesControl& ctrl) {
    require_non_integer_order(order);
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k: requires x > 0");
    if (x >= kSeriesAsymptoticSwitch) return log_bessel_k_asymptotic(order, x);
    const SignedLog k = bessel_k_series_core(order, x, ctrl);
    // K_v is positive on its whole domain; a negative sign here would mean a
    // catastrophic loss of precision in the series.
    if (k.sign < 0.0)
        throw numeric_error("bessel_k series: sign loss at v=" + std::to_string(order) +
                            ", x=" + std::to_string(x));
    return k.log_abs;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_function_craig(double x) {
    if (x < 0.0) throw std::invalid_argument("q_function_craig: requires x >= 0");
    const double x2 = x * x;
    auto integrand = [x2](double theta) {
        const double s = std::sin(theta);
        return std::exp(-x2 / (2.0 * s * s));
    };
    quadrature::Options opts;
    opts.rel_tol = 1e-14;
    opts.abs_tol = 1e-300;  // integral underflows to 0 for large x
    return quadrature::integrate(integrand, 0.0, kPi / 2.0, opts).value / kPi;
}

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer " + std::to_string(x));
    const SignedLog g = log_gamma_signed(x);
    return g.sign * std::exp(g.log_abs);
}

double beta_fn(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("beta_fn: requires x > 0 and y > 0");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

}  // namespace fsoc::specfun
