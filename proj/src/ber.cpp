// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "fsoc/ber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fsoc/errors.hpp"
#include "fsoc/quadrature.hpp"
#include "fsoc/specfun.hpp"

namespace fsoc::ber {

namespace {

constexpr double kPi = std::numbers::pi;

// How far past J the truncation bound scans for the largest |G_p(a,b) -
// G_p(b,a)|; the factorially decaying series weights make contributions
// beyond this window irrelevant.
constexpr int kBoundScan = 200;

struct SignedValue {
    double log_abs;
    double sign;
    double value() const { return sign * std::exp(log_abs); }
};

// Lambda(a, b) = 1 / (Gamma(a) Gamma(b) sin((a-b) pi)), signed: the sine
// factor goes negative when alpha - beta is in (1, 2) mod 2.
SignedValue log_lambda(double a, double b) {
    const double s = std::sin((a - b) * kPi);
    return {-std::lgamma(a) - std::lgamma(b) - std::log(std::fabs(s)),
            s < 0.0 ? -1.0 : 1.0};
}

// G_p in log space; Gamma(p - x + y + 1) flips sign for small p when x - y
// exceeds 1 (strong-turbulence presets), hence the sign tracking.
SignedValue log_g(int p, double x, double y, double gamma_bar) {
    const specfun::SignedLog den = specfun::log_gamma_signed(p - x + y + 1.0);
    const double log_abs = std::lgamma(p + y + 0.5) - std::log(p + y) - den.log_abs +
                           y * std::log(2.0 * x * y / gamma_bar);
    return {log_abs, den.sign};
}

double g_difference(int p, double a, double b, double gamma_bar) {
    const SignedValue gab = log_g(p, a, b, gamma_bar);
    const SignedValue gba = log_g(p, b, a, gamma_bar);
    return gab.value() - gba.value();
}

void require_series_valid(const channel::TurbulenceParams& turb) {
    if (!turb.series_order_valid)
        throw std::domain_error(
            "ber series: alpha - beta is integer within tolerance; series form is invalid");
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::mc: return "mc";
        case Method::integral: return "integral";
        case Method::series: return "series";
        case Method::asymptotic: return "asymptotic";
    }
    return "?";
}

BerResult BerResult::make(double value, Method method, std::optional<double> error_estimate,
                          std::optional<int> terms_used) {
    if (!(value >= 0.0) || !(value <= 0.5))
        throw numeric_error("BerResult: value " + std::to_string(value) +
                            " outside [0, 0.5]");
    if (terms_used.has_value() != (method == Method::series))
        throw std::logic_error("BerResult: terms_used present iff method == series");
    BerResult r;
    r.value = value;
    r.method = method;
    r.error_estimate = error_estimate;
    r.terms_used = terms_used;
    return r;
}

SeriesCoefficients series_coefficients(const channel::TurbulenceParams& turb, int j_terms) {
    require_series_valid(turb);
    if (j_terms < 1) throw std::invalid_argument("series_coefficients: j_terms >= 1");
    const double a = turb.alpha;
    const double b = turb.beta;

    auto a_p = [](double x, double y, int p) {
        const specfun::SignedLog den = specfun::log_gamma_signed(p - x + y + 1.0);
        const double log_abs = (p + y) * std::log(x * y) + std::lgamma(p + y) - den.log_abs -
                               std::lgamma(p + 1.0);
        return den.sign * std::exp(log_abs);
    };

    SeriesCoefficients c;
    c.lambda = log_lambda(a, b).value();
    c.a_p_alpha_beta.reserve(j_terms);
    c.a_p_beta_alpha.reserve(j_terms);
    for (int p = 0; p < j_terms; ++p) {
        c.a_p_alpha_beta.push_back(a_p(a, b, p));
        c.a_p_beta_alpha.push_back(a_p(b, a, p));
    }
    return c;
}

double series_g(int p, double x, double y, double gamma_bar) {
    if (p < 0 || !(gamma_bar > 0.0)) throw std::invalid_argument("series_g: bad arguments");
    return log_g(p, x, y, gamma_bar).value();
}

double ber_conditional(double snr) {
    if (!(snr >= 0.0)) throw std::invalid_argument("ber_conditional: requires snr >= 0");
    return specfun::q_function(std::sqrt(snr));
}

BerResult ber_mc(combining::CombinerKind kind, const lantern::LanternModel& model,
                 combining::SnrScale s, const channel::TurbulenceParams& turb,
                 std::int64_t n_samples, SeededRng& rng) {
    if (n_samples < 1) throw std::invalid_argument("ber_mc: requires n_samples >= 1");

    SeededRng chan_rng = rng.fork(1);
    SeededRng split_rng = rng.fork(2);

    const int n = model.n_smf;
    const bool split_free = kind == combining::CombinerKind::MRC ||
                            model.kind() == lantern::LanternModel::Kind::Degenerate;

    mci::WelfordAccumulator acc;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const double irr = channel::gg_sample(turb, chan_rng).value;
        double snr;
        if (split_free) {
            // Degenerate EGC equals MRC exactly ((sum sqrt(1/N))^2 = N);
            // degenerate SC selects a 1/N branch.
            snr = (kind == combining::CombinerKind::SC) ? s.k * irr : s.k * n * irr;
        } else {
            const lantern::PowerSplit a = lantern::sample_split(model, split_rng);
            snr = combining::instantaneous_snr(kind, a, channel::Irradiance(irr), s);
        }
        acc.add(specfun::q_function(std::sqrt(snr)));
    }
    return BerResult::make(acc.mean(), Method::mc, acc.std_error());
}

BerResult ber_integral(double gamma_bar, const channel::TurbulenceParams& turb,
                       double quad_tol) {
    if (!(gamma_bar > 0.0)) throw std::invalid_argument("ber_integral: requires gamma_bar > 0");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("ber_integral: requires quad_tol > 0");

    const double tail_mass = std::min(1e-14, 0.01 * quad_tol);
    const double upper = channel::gg_tail_cutoff(turb, tail_mass);

    auto integrand = [&](double irr) {
        return channel::gg_pdf(channel::Irradiance(irr), turb) *
               specfun::q_function(std::sqrt(gamma_bar * irr));
    };

    // Breakpoints at the Q-function roll-off scales (~1/gamma_bar) and at
    // the channel's unit scale.
    std::vector<double> edges{0.0, upper};
    for (double scale : {0.25, 2.5, 25.0, 250.0}) {
        const double knot = scale / gamma_bar;
        if (knot > 0.0 && knot < upper) edges.push_back(knot);
    }
    if (1.0 < upper) edges.push_back(1.0);

    quadrature::Options opts;
    opts.rel_tol = 0.1 * quad_tol;
    opts.abs_tol = 1e-300;
    const quadrature::Result q = quadrature::integrate_segmented(integrand, edges, opts);

    // Q <= 1/2 and the density integrates to 1, so anything above 0.5 is
    // quadrature roundoff.
    const double value = std::min(q.value, 0.5);
    return BerResult::make(value, Method::integral, quad_tol * value + 0.5 * tail_mass);
}

BerResult ber_series(double gamma_bar, const channel::TurbulenceParams& turb, int j_terms) {
    require_series_valid(turb);
    if (!(gamma_bar > 0.0)) throw std::invalid_argument("ber_series: requires gamma_bar > 0");
    if (j_terms < 1) throw std::invalid_argument("ber_series: requires j_terms >= 1");

    const double a = turb.alpha;
    const double b = turb.beta;
    const double z = 2.0 * a * b / gamma_bar;
    const SignedValue lambda = log_lambda(a, b);

    double sum = 0.0;
    double weight = 1.0;  // z^p / p!
    for (int p = 0; p < j_terms; ++p) {
        if (p > 0) weight *= z / p;
        sum += weight * g_difference(p, a, b, gamma_bar);
    }

    const double value = 0.5 * std::sqrt(kPi) * lambda.value() * sum;
    if (value < 0.0)
        throw numeric_error("ber_series: negative partial sum (insufficient J at gamma_bar=" +
                            std::to_string(gamma_bar) + ")");
    if (value > 0.5)
        throw numeric_error("ber_series: partial sum above 0.5 (series not converged at this SNR)");
    return BerResult::make(value, Method::series, truncation_bound(j_terms, gamma_bar, turb),
                           j_terms);
}

double truncation_bound(int j_terms, double gamma_bar, const channel::TurbulenceParams& turb) {
    require_series_valid(turb);
    if (!(gamma_bar > 0.0) || j_terms < 1)
        throw std::invalid_argument("truncation_bound: bad arguments");

    const double a = turb.alpha;
    const double b = turb.beta;
    const double z = 2.0 * a * b / gamma_bar;

    double max_diff = 0.0;
    for (int p = j_terms; p <= j_terms + kBoundScan; ++p)
        max_diff = std::max(max_diff, std::fabs(g_difference(p, a, b, gamma_bar)));

    const double log_lead = j_terms * std::log(z) - std::lgamma(j_terms + 1.0) + z;
    const double lambda_abs = std::exp(log_lambda(a, b).log_abs);
    return 0.5 * std::sqrt(kPi) * lambda_abs * std::exp(log_lead) * max_diff;
}

double asymptotic_coefficient(const channel::TurbulenceParams& turb) {
    const double a = turb.alpha;
    const double b = turb.beta;
    if (!(a > b))
        throw std::domain_error("ber_asymptotic: requires alpha > beta");
    const double s = std::sin((a - b) * kPi);
    const specfun::SignedLog g1mab = specfun::log_gamma_signed(-a + b + 1.0);
    const double log_h = std::log(0.5 * std::sqrt(kPi)) + b * std::log(2.0 * a * b) +
                         std::lgamma(b + 0.5) - std::lgamma(a) - std::lgamma(b + 1.0) -
                         g1mab.log_abs - std::log(std::fabs(s));
    const double h = g1mab.sign * (s < 0.0 ? -1.0 : 1.0) * std::exp(log_h);
    if (!(h > 0.0)) throw numeric_error("ber_asymptotic: nonpositive coefficient");
    return h;
}

BerResult ber_asymptotic(double gamma_bar, const channel::TurbulenceParams& turb) {
    if (!(gamma_bar > 0.0))
        throw std::invalid_argument("ber_asymptotic: requires gamma_bar > 0");
    const double value = asymptotic_coefficient(turb) * std::pow(gamma_bar, -turb.beta);
    return BerResult::make(value, Method::asymptotic, std::nullopt);
}

}  // namespace fsoc::ber
