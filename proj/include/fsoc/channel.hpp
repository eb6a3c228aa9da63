// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_CHANNEL_HPP
#define FSOC_CHANNEL_HPP

#include <string_view>

#include "fsoc/rng.hpp"

namespace fsoc::channel {

/// Gamma-Gamma scintillation shape parameters: effective numbers of
/// large-scale (alpha) and small-scale (beta) turbulence cells.
struct TurbulenceParams {
    TurbulenceParams(double alpha, double beta);

    double alpha;
    double beta;

    /// True when alpha - beta is non-integer (within tolerance), i.e. the
    /// series-form BER machinery built on K_{alpha-beta} is applicable.
    bool series_order_valid;
};

/// Named presets: "moderate" -> (2.23, 1.54), "strong" -> (2.34, 1.02).
TurbulenceParams preset(std::string_view name);

/// Normalized received irradiance, E[I] = 1 over the channel.
struct Irradiance {
    explicit Irradiance(double v);
    double value;
};

/// Gamma-Gamma density
///   f(I) = 2 (ab)^((a+b)/2) / (Gamma(a) Gamma(b))
///          * I^((a+b)/2 - 1) * K_{a-b}(2 sqrt(ab I)).
/// Evaluated in log space; throws std::domain_error for I <= 0.
double gg_pdf(Irradiance i, const TurbulenceParams& p);

/// log of gg_pdf; safe where the density underflows (large I).
double gg_log_pdf(Irradiance i, const TurbulenceParams& p);

/// Draw I = X * Y with independent unit-mean Gamma variates of shapes
/// alpha and beta; this product is Gamma-Gamma distributed with density
/// gg_pdf.
Irradiance gg_sample(const TurbulenceParams& p, SeededRng& rng);

/// Upper limit U with P[I > U] < tail_mass, certified by a moment
/// (Chernoff) bound min_s E[I^s] / U^s. Used to cut off semi-infinite
/// quadratures over the channel density.
double gg_tail_cutoff(const TurbulenceParams& p, double tail_mass);

}  // namespace fsoc::channel

#endif
