// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_SPECFUN_HPP
#define FSOC_SPECFUN_HPP

namespace fsoc::specfun {

/// Truncation control for the K_v power series.
struct SeriesControl {
    int max_terms = 200;     // generous: the series converges factorially
    double rel_tol = 1e-14;  // term-ratio stopping threshold
};

/// Orders closer than this to an integer are rejected: the two-sided power
/// series of K_v holds only for non-integer v.
inline constexpr double kIntegerOrderTol = 1e-9;

/// log|Gamma(x)| with the sign of Gamma(x). Negative non-integer arguments
/// are handled through the reflection formula.
struct SignedLog {
    double log_abs;
    double sign;  // +1 or -1
};
SignedLog log_gamma_signed(double x);

/// Modified Bessel function of the second kind, non-integer order, evaluated
/// from its two-sided power series
///
///   K_v(x) = pi / (2 sin(pi v)) * sum_p [ (x/2)^(2p-v) / (Gamma(p-v+1) p!)
///                                       - (x/2)^(2p+v) / (Gamma(p+v+1) p!) ].
///
/// Summation stops once the last added term of each partial sum falls below
/// ctrl.rel_tol times that sum. Accurate for x up to ~10; beyond that the
/// head-tail cancellation inherent to the series costs digits (use bessel_k).
///
/// Throws std::domain_error when |v - round(v)| < kIntegerOrderTol, and
/// non_convergence_error when ctrl.max_terms is exhausted.
double bessel_k_series(double order, double x, const SeriesControl& ctrl = {});

/// K_v(x) over the full argument range: power series for x < 10, large-x
/// asymptotic expansion otherwise. Same order restrictions as the series.
double bessel_k(double order, double x, const SeriesControl& ctrl = {});

/// log K_v(x); avoids underflow of K for large x (K ~ e^-x) and overflow for
/// tiny x at larger orders.
double log_bessel_k(double order, double x, const SeriesControl& ctrl = {});

/// Gaussian tail probability Q(x) = P[N(0,1) > x], via the complementary
/// error function.
double q_function(double x);

/// Q(x) for x >= 0 from the single-finite-interval representation
///   Q(x) = (1/pi) * integral_0^{pi/2} exp(-x^2 / (2 sin^2 theta)) dtheta,
/// evaluated by adaptive quadrature. Agrees with q_function to 1e-12;
/// kept as an independent evaluation route.
double q_function_craig(double x);

/// Gamma function. Throws std::domain_error at nonpositive integers.
double gamma_fn(double x);

/// Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y) for x, y > 0.
double beta_fn(double x, double y);

}  // namespace fsoc::specfun

#endif
