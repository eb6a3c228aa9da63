// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_BER_HPP
#define FSOC_BER_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fsoc/channel.hpp"
#include "fsoc/combining.hpp"
#include "fsoc/lantern.hpp"
#include "fsoc/rng.hpp"

namespace fsoc::ber {

enum class Method { mc, integral, series, asymptotic };

std::string_view to_string(Method m);

/// BPSK bit-error rate with the route that produced it.
///  - error_estimate: sample std error (mc), stated quadrature tolerance
///    (integral), truncation bound (series); unset for asymptotic.
///  - terms_used: present iff method == series.
class BerResult {
  public:
    static BerResult make(double value, Method method, std::optional<double> error_estimate,
                          std::optional<int> terms_used = std::nullopt);

    double value;
    Method method;
    std::optional<double> error_estimate;
    std::optional<int> terms_used;

  private:
    BerResult() = default;
};

/// Series building blocks for the analytic BER lower bound:
///   Lambda(a, b) = 1 / (Gamma(a) Gamma(b) sin((a-b) pi)),
///   a_p(x, y)    = (xy)^(p+y) Gamma(p+y) / (Gamma(p-x+y+1) p!).
struct SeriesCoefficients {
    double lambda;
    std::vector<double> a_p_alpha_beta;  // a_p(alpha, beta), p = 0..J-1
    std::vector<double> a_p_beta_alpha;  // a_p(beta, alpha)
};

SeriesCoefficients series_coefficients(const channel::TurbulenceParams& turb, int j_terms);

/// G_p(x, y) = Gamma(p+y+1/2) / ((p+y) Gamma(p-x+y+1)) * (2xy/gamma_bar)^y.
double series_g(int p, double x, double y, double gamma_bar);

/// Conditional BPSK error probability at instantaneous SNR: Q(sqrt(snr)).
double ber_conditional(double snr);

/// Unconditional BER by conditional-expectation Monte-Carlo: averages
/// Q(sqrt(gamma)) over joint draws of the channel irradiance and the power
/// split. The channel and split streams are forked independently from rng,
/// and models whose SNR does not depend on the split (MRC, or any
/// degenerate-split combiner) never consume the split stream, so e.g.
/// ber_mc(MRC) is bitwise invariant to the lantern model.
BerResult ber_mc(combining::CombinerKind kind, const lantern::LanternModel& model,
                 combining::SnrScale s, const channel::TurbulenceParams& turb,
                 std::int64_t n_samples, SeededRng& rng);

/// Unconditional BER of any receiver with SNR = gamma_bar * I (the MRC
/// lantern bound, SMF, MMF): adaptive quadrature of f(I) Q(sqrt(gamma_bar
/// I)) over (0, U) with the tail beyond U below the stated tolerance.
/// quad_tol is a relative tolerance; the reported error_estimate is
/// quad_tol * value plus the tail allowance.
BerResult ber_integral(double gamma_bar, const channel::TurbulenceParams& turb,
                       double quad_tol = 1e-9);

/// Finite-J series lower bound
///   P_e = (sqrt(pi)/2) Lambda(a,b) sum_{p<J} (1/p!) (2ab/gbar)^p
///         [G_p(a,b) - G_p(b,a)],
/// with error_estimate = truncation_bound(J). Requires alpha - beta
/// non-integer. A negative partial sum signals insufficient J for this SNR
/// and throws numeric_error.
BerResult ber_series(double gamma_bar, const channel::TurbulenceParams& turb, int j_terms = 30);

/// Upper bound on the series truncation error after J terms:
///   (sqrt(pi)/2) |Lambda| (1/J!) (2ab/gbar)^J exp(2ab/gbar)
///   * max_{p in [J, J+200]} |G_p(a,b) - G_p(b,a)|.
double truncation_bound(int j_terms, double gamma_bar, const channel::TurbulenceParams& turb);

/// High-SNR power law P_e ~ H(alpha, beta) gamma_bar^(-beta). Requires
/// alpha > beta.
BerResult ber_asymptotic(double gamma_bar, const channel::TurbulenceParams& turb);

/// The asymptotic coefficient H(alpha, beta).
double asymptotic_coefficient(const channel::TurbulenceParams& turb);

}  // namespace fsoc::ber

#endif
