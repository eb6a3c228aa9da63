// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "fsoc/combining.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsoc::combining {

namespace {
constexpr double kPi = std::numbers::pi;
}

DeviceParams::DeviceParams(double zs, double zm, double es, double em, double r, double area,
                           double q, double b)
    : zeta_s(zs),
      zeta_m(zm),
      eta_s(es),
      eta_m(em),
      responsivity(r),
      aperture_area(area),
      electron_charge(q),
      bandwidth(b) {
    auto efficiency = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!efficiency(zs) || !efficiency(zm) || !efficiency(es) || !efficiency(em))
        throw std::invalid_argument("DeviceParams: efficiencies must be in (0, 1]");
    if (!(r > 0.0) || !(area > 0.0) || !(q > 0.0) || !(b > 0.0))
        throw std::invalid_argument("DeviceParams: R, A, q, B must be positive");
}

std::string_view to_string(CombinerKind kind) {
    switch (kind) {
        case CombinerKind::SC: return "sc";
        case CombinerKind::EGC: return "egc";
        case CombinerKind::MRC: return "mrc";
    }
    return "?";
}

SnrScale snr_scale(const DeviceParams& d, const lantern::LanternModel& model) {
    return {d.responsivity * d.aperture_area * d.zeta_m * model.loss * d.eta_s /
            (model.n_smf * d.electron_charge * d.bandwidth)};
}

double instantaneous_snr(CombinerKind kind, const lantern::PowerSplit& a, channel::Irradiance i,
                         SnrScale s) {
    const int n = a.size();
    switch (kind) {
        case CombinerKind::MRC:
            return s.k * n * i.value;
        case CombinerKind::SC: {
            const double amax = *std::max_element(a.ratios().begin(), a.ratios().end());
            return s.k * n * amax * i.value;
        }
        case CombinerKind::EGC: {
            double sum = 0.0;
            for (double r : a.ratios()) sum += std::sqrt(r);
            return s.k * sum * sum * i.value;
        }
    }
    throw std::logic_error("instantaneous_snr: unreachable");
}

double sc_uniform_mean_max(int n_smf) {
    if (n_smf < 2) throw std::invalid_argument("sc_uniform_mean_max: requires n_smf >= 2");
    if (n_smf == 2) return 0.75;
    return 4.45 / (n_smf + 4.33);
}

mci::MciEstimate egc_combining_gain(const lantern::LanternModel& model, std::int64_t mc_samples,
                                    SeededRng& rng) {
    const int n = model.n_smf;
    switch (model.kind()) {
        case lantern::LanternModel::Kind::Degenerate:
            return {static_cast<double>(n), 0.0, 0};
        case lantern::LanternModel::Kind::Uniform:
            return {(kPi * n + 4.0 - kPi) / 4.0, 0.0, 0};
        case lantern::LanternModel::Kind::TruncGaussian:
            break;
    }
    if (mc_samples < 1)
        throw std::invalid_argument("egc_combining_gain: mc_samples >= 1 required");
    auto sampler = [&model](SeededRng& r) { return lantern::sample_split(model, r); };
    auto objective = [](const lantern::PowerSplit& a) {
        double sum = 0.0;
        for (double r : a.ratios()) sum += std::sqrt(r);
        return sum * sum;
    };
    return mci::mci_estimate(sampler, objective, std::max<std::int64_t>(mc_samples, 2), rng);
}

mci::MciEstimate average_snr(CombinerKind kind, const lantern::LanternModel& model, SnrScale s,
                             std::int64_t mc_samples, SeededRng& rng) {
    const int n = model.n_smf;
    const auto model_kind = model.kind();

    if (kind == CombinerKind::MRC) return {s.k * n, 0.0, 0};

    if (kind == CombinerKind::EGC) {
        mci::MciEstimate gain = egc_combining_gain(model, mc_samples, rng);
        return {s.k * gain.value, s.k * gain.std_error, gain.n_samples};
    }

    // SC
    switch (model_kind) {
        case lantern::LanternModel::Kind::Degenerate:
            return {s.k, 0.0, 0};  // E[max] = 1/N
        case lantern::LanternModel::Kind::Uniform:
            return {s.k * n * sc_uniform_mean_max(n), 0.0, 0};
        case lantern::LanternModel::Kind::TruncGaussian:
            break;
    }
    if (mc_samples < 1) throw std::invalid_argument("average_snr: mc_samples >= 1 required");
    auto sampler = [&model](SeededRng& r) { return lantern::sample_split(model, r); };
    auto objective = [](const lantern::PowerSplit& a) {
        return *std::max_element(a.ratios().begin(), a.ratios().end());
    };
    const mci::MciEstimate mean_max =
        mci::mci_estimate(sampler, objective, std::max<std::int64_t>(mc_samples, 2), rng);
    return {s.k * n * mean_max.value, s.k * n * mean_max.std_error, mean_max.n_samples};
}

double snr_ratio_deg_over_uni(CombinerKind kind, int n_smf) {
    if (n_smf < 2) throw std::invalid_argument("snr_ratio_deg_over_uni: requires n_smf >= 2");
    switch (kind) {
        case CombinerKind::EGC:
            return 4.0 * n_smf / (kPi * n_smf + 4.0 - kPi);
        case CombinerKind::SC:
            // gamma_deg / gamma_uni = (K) / (K N E[max]); exact at N = 2.
            return 1.0 / (n_smf * sc_uniform_mean_max(n_smf));
        case CombinerKind::MRC:
            throw std::invalid_argument(
                "snr_ratio_deg_over_uni: MRC ratio is identically 1 (degenerate query)");
    }
    throw std::logic_error("snr_ratio_deg_over_uni: unreachable");
}

SmfMmfSnr smf_mmf_snr(const DeviceParams& d, channel::Irradiance i) {
    const double front = d.responsivity * d.aperture_area * i.value /
                         (d.electron_charge * d.bandwidth);
    return {d.zeta_s * d.eta_s * front, d.zeta_m * d.eta_m * front};
}

}  // namespace fsoc::combining
