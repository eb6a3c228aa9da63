// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_COMBINING_HPP
#define FSOC_COMBINING_HPP

#include <cstdint>
#include <string_view>

#include "fsoc/channel.hpp"
#include "fsoc/lantern.hpp"
#include "fsoc/mci.hpp"
#include "fsoc/rng.hpp"

namespace fsoc::combining {

/// Receiver-chain device constants. Efficiencies are fractions in (0, 1];
/// the remaining fields are positive physical constants.
struct DeviceParams {
    DeviceParams(double zeta_s, double zeta_m, double eta_s, double eta_m, double responsivity,
                 double aperture_area, double electron_charge, double bandwidth);

    double zeta_s;           // SMF coupling efficiency
    double zeta_m;           // MMF coupling efficiency
    double eta_s;            // SMF mixing efficiency
    double eta_m;            // MMF mixing efficiency
    double responsivity;     // R [A/W]
    double aperture_area;    // A [m^2]
    double electron_charge;  // q [C]
    double bandwidth;        // B [Hz]
};

/// Shot-noise-limited SNR per unit irradiance for one lantern branch:
/// K = R A zeta_M xi_PL eta_S / (N q B).
struct SnrScale {
    double k;
};

enum class CombinerKind { SC, EGC, MRC };

std::string_view to_string(CombinerKind kind);

SnrScale snr_scale(const DeviceParams& d, const lantern::LanternModel& model);

/// Instantaneous SNR of the lantern receiver:
///   EGC: K (sum_i sqrt(a_i))^2 I,  SC: K N max_i(a_i) I,  MRC: K N I.
double instantaneous_snr(CombinerKind kind, const lantern::PowerSplit& a, channel::Irradiance i,
                         SnrScale s);

/// E[max_i a_i] under the uniform simplex law as used for the SC average:
/// exactly 3/4 at N = 2, the fitted 4.45/(N + 4.33) for N > 2.
double sc_uniform_mean_max(int n_smf);

/// E[(sum_i sqrt(a_i))^2] for the model: N (degenerate),
/// (pi N + 4 - pi)/4 (uniform, via E[sqrt(a1 a2)] = pi/(4N)), or a
/// Monte-Carlo estimate (truncated Gaussian). Closed forms return
/// std_error = 0 and n_samples = 0.
mci::MciEstimate egc_combining_gain(const lantern::LanternModel& model,
                                    std::int64_t mc_samples, SeededRng& rng);

/// Average SNR (E[I] = 1 factored out analytically). Closed forms are used
/// wherever they exist: MRC always (K N); EGC and SC for the degenerate and
/// uniform cases; otherwise a Monte-Carlo estimate over sample_split.
mci::MciEstimate average_snr(CombinerKind kind, const lantern::LanternModel& model, SnrScale s,
                             std::int64_t mc_samples, SeededRng& rng);

/// Average-SNR ratio degenerate/uniform: 4N/(pi N + 4 - pi) for EGC;
/// 2/3 (N = 2) or (N + 4.33)/(4.45 N) for SC. MRC is rejected: the ratio
/// is identically 1.
double snr_ratio_deg_over_uni(CombinerKind kind, int n_smf);

struct SmfMmfSnr {
    double smf;
    double mmf;
};

/// Instantaneous SNR of the reference receivers:
///   SMF: zeta_S eta_S R A I / (q B),  MMF: zeta_M eta_M R A I / (q B).
/// Averages follow by setting I = 1.
SmfMmfSnr smf_mmf_snr(const DeviceParams& d, channel::Irradiance i);

}  // namespace fsoc::combining

#endif
