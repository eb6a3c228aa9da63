// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_LANTERN_HPP
#define FSOC_LANTERN_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "fsoc/mci.hpp"
#include "fsoc/rng.hpp"

namespace fsoc::lantern {

/// Per-SMF power fractions a_1..a_N on the standard unit simplex:
/// each ratio in [0, 1], sum equal to 1 within kSimplexTol.
class PowerSplit {
  public:
    static constexpr double kSimplexTol = 1e-12;

    explicit PowerSplit(std::vector<double> ratios);

    const std::vector<double>& ratios() const { return ratios_; }
    int size() const { return static_cast<int>(ratios_.size()); }

  private:
    std::vector<double> ratios_;
};

/// Power-distribution model at the SMF end of the lantern. The Gaussian
/// variance doubles as the model tag: sigma2 == 0 is the degenerate point
/// mass at 1/N, sigma2 == +inf the uniform distribution on the simplex,
/// anything in between a truncated Gaussian.
struct LanternModel {
    enum class Kind { Degenerate, TruncGaussian, Uniform };

    LanternModel(int n_smf, double sigma2, double loss);

    static LanternModel degenerate(int n_smf, double loss = 1.0) {
        return {n_smf, 0.0, loss};
    }
    static LanternModel uniform(int n_smf, double loss = 1.0) {
        return {n_smf, std::numeric_limits<double>::infinity(), loss};
    }
    static LanternModel trunc_gaussian(int n_smf, double sigma2, double loss = 1.0) {
        return {n_smf, sigma2, loss};
    }

    Kind kind() const;

    int n_smf;      // N >= 2
    double sigma2;  // Gaussian variance, in [0, +inf]
    double loss;    // xi_PL in (0, 1]
};

/// Summary statistics from the photon-assignment Monte-Carlo. Ports are
/// statistically identical, so mean/variance are reported for the first
/// port and the correlation for the first port pair.
struct PhotonSimStats {
    double per_port_mean;
    double per_port_variance;
    double pairwise_correlation;
    std::int64_t n_photons;
    std::int64_t n_trials;
};

/// Per-port histograms of the photon-count ratios over [0, 1].
struct PhotonHistogram {
    int n_bins = 0;
    std::vector<std::vector<std::int64_t>> counts;  // [port][bin]

    double bin_center(int bin) const { return (bin + 0.5) / n_bins; }
};

/// Photon-assignment simulation: per trial, n_photons photons are assigned
/// uniformly at random across the N ports (one multinomial draw), the
/// count ratios recorded, and the trial repeated n_trials times.
/// When histogram is non-null it receives per-port ratio histograms with
/// histogram->n_bins bins (must be set > 0 by the caller).
PhotonSimStats photon_mc(int n_smf, std::int64_t n_photons, std::int64_t n_trials,
                         SeededRng& rng, PhotonHistogram* histogram = nullptr);

/// rho = -1/(N-1), the port-pair correlation forced by sum(a_i) = 1.
double theoretical_correlation(int n_smf);

/// Draw a power split from the model:
///  - degenerate: a_i = 1/N exactly;
///  - uniform: exponential-spacings construction of the uniform simplex law;
///  - truncated Gaussian: exact hyperplane-constrained Gaussian draw
///    (z - zbar construction), rejected until all coordinates lie in [0,1].
/// Throws rejection_stall_error if kStallWindow consecutive proposals are
/// rejected (acceptance below ~1/kStallWindow).
PowerSplit sample_split(const LanternModel& model, SeededRng& rng);

inline constexpr std::int64_t kStallWindow = 1000000;

/// Joint density of the split w.r.t. the (N-1)-dimensional coordinate
/// measure on the simplex (the delta factor integrated out), making the
/// uniform density (N-1)!.
/// For the truncated Gaussian the caller supplies the normalization c2
/// (from normalization_c2). Degenerate models have no density and throw
/// std::domain_error.
double split_density(const PowerSplit& a, const LanternModel& model,
                     double c2 = std::numeric_limits<double>::quiet_NaN());

/// Minimal dense square matrix, enough to expose the closed-form inverse
/// covariance.
struct SquareMatrix {
    explicit SquareMatrix(int n) : n(n), data(static_cast<std::size_t>(n) * n, 0.0) {}
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
    int n;
    std::vector<double> data;
};

/// Inverse covariance of the first N-1 coordinates under the sum
/// constraint: [(N-1)/(N sigma2)] * (I + ones), i.e. 2 on the diagonal and
/// 1 off-diagonal before scaling.
SquareMatrix sigma_star_inverse(int n_smf, double sigma2);

/// Normalization constant of the Gaussian factor on the constraint
/// hyperplane: C3 = [2 pi sigma2 N/(N-1)]^((N-1)/2) / sqrt(N).
double gaussian_normalization_c3(int n_smf, double sigma2);

/// MCI estimate of the truncated-Gaussian normalization
///   C2 = C3 * P[a in [0,1]^N],
/// sampling the unconstrained Gaussian on the sum(a)=1 hyperplane and
/// averaging the box indicator. Throws insufficient_samples_error when the
/// relative standard error exceeds 10%.
mci::MciEstimate normalization_c2(const LanternModel& model, std::int64_t n_samples,
                                  SeededRng& rng);

}  // namespace fsoc::lantern

#endif
