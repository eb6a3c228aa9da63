// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "fsoc/lantern.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fsoc/errors.hpp"

namespace fsoc::lantern {

PowerSplit::PowerSplit(std::vector<double> ratios) : ratios_(std::move(ratios)) {
    if (ratios_.size() < 2) throw std::invalid_argument("PowerSplit: needs at least 2 ports");
    double sum = 0.0;
    for (double r : ratios_) {
        if (!(r >= 0.0) || !(r <= 1.0))
            throw std::invalid_argument("PowerSplit: ratio outside [0,1]");
        sum += r;
    }
    if (std::fabs(sum - 1.0) > kSimplexTol)
        throw std::invalid_argument("PowerSplit: ratios sum to " + std::to_string(sum) +
                                    ", not 1 within tolerance");
}

LanternModel::LanternModel(int n, double s2, double l) : n_smf(n), sigma2(s2), loss(l) {
    if (n < 2) throw std::invalid_argument("LanternModel: requires n_smf >= 2");
    if (!(s2 >= 0.0)) throw std::invalid_argument("LanternModel: requires sigma2 >= 0");
    if (!(l > 0.0) || !(l <= 1.0))
        throw std::invalid_argument("LanternModel: requires loss in (0, 1]");
}

LanternModel::Kind LanternModel::kind() const {
    if (sigma2 == 0.0) return Kind::Degenerate;
    if (std::isinf(sigma2)) return Kind::Uniform;
    return Kind::TruncGaussian;
}

PhotonSimStats photon_mc(int n_smf, std::int64_t n_photons, std::int64_t n_trials,
                         SeededRng& rng, PhotonHistogram* histogram) {
    if (n_smf < 2) throw std::invalid_argument("photon_mc: requires n_smf >= 2");
    if (n_photons < 1 || n_trials < 1)
        throw std::invalid_argument("photon_mc: requires n_photons >= 1 and n_trials >= 1");
    if (histogram) {
        if (histogram->n_bins < 1)
            throw std::invalid_argument("photon_mc: histogram->n_bins must be set");
        histogram->counts.assign(n_smf, std::vector<std::int64_t>(histogram->n_bins, 0));
    }

    mci::WelfordAccumulator port0;
    mci::BivariateAccumulator pair01;
    std::vector<std::int64_t> counts(n_smf);

    for (std::int64_t trial = 0; trial < n_trials; ++trial) {
        // Multinomial draw as a chain of binomials: port i receives a
        // Binomial(remaining, 1/(N-i)) share of the photons left.
        std::int64_t remaining = n_photons;
        for (int i = 0; i < n_smf - 1; ++i) {
            std::int64_t c = 0;
            if (remaining > 0) {
                std::binomial_distribution<std::int64_t> binom(remaining, 1.0 / (n_smf - i));
                c = binom(rng.engine());
            }
            counts[i] = c;
            remaining -= c;
        }
        counts[n_smf - 1] = remaining;

        const double inv_m = 1.0 / static_cast<double>(n_photons);
        const double a0 = counts[0] * inv_m;
        const double a1 = counts[1] * inv_m;
        port0.add(a0);
        pair01.add(a0, a1);
        if (histogram) {
            // Integer arithmetic: floor(count/M * n_bins) without float
            // rounding, so lattice values never land in a neighboring bin.
            for (int i = 0; i < n_smf; ++i) {
                int bin = static_cast<int>(counts[i] * histogram->n_bins / n_photons);
                if (bin >= histogram->n_bins) bin = histogram->n_bins - 1;
                ++histogram->counts[i][bin];
            }
        }
    }

    return {port0.mean(), port0.variance(), pair01.pearson(), n_photons, n_trials};
}

double theoretical_correlation(int n_smf) {
    if (n_smf < 2) throw std::invalid_argument("theoretical_correlation: requires n_smf >= 2");
    return -1.0 / (n_smf - 1);
}

namespace {

PowerSplit sample_uniform_simplex(int n, SeededRng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> a(n);
    double sum = 0.0;
    for (double& v : a) {
        v = expo(rng.engine());
        sum += v;
    }
    for (double& v : a) v /= sum;
    return PowerSplit(std::move(a));
}

// One proposal from the exact constrained Gaussian: z_i iid N(0, s^2) with
// s^2 = sigma2 * N/(N-1), centered so that sum(a) = 1 holds by construction.
// The first N-1 coordinates then follow N(mu*, Sigma*) with Sigma* the
// submatrix inverted by sigma_star_inverse.
void propose_constrained_gaussian(int n, double sigma2, SeededRng& rng,
                                  std::vector<double>& out) {
    const double s = std::sqrt(sigma2 * n / (n - 1.0));
    std::normal_distribution<double> normal(0.0, s);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = normal(rng.engine());
        sum += out[i];
    }
    const double mean = sum / n;
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = inv_n + (out[i] - mean);
}

}  // namespace

PowerSplit sample_split(const LanternModel& model, SeededRng& rng) {
    const int n = model.n_smf;
    switch (model.kind()) {
        case LanternModel::Kind::Degenerate:
            return PowerSplit(std::vector<double>(n, 1.0 / n));
        case LanternModel::Kind::Uniform:
            return sample_uniform_simplex(n, rng);
        case LanternModel::Kind::TruncGaussian:
            break;
    }

    std::vector<double> a(n);
    for (std::int64_t attempt = 0; attempt < kStallWindow; ++attempt) {
        propose_constrained_gaussian(n, model.sigma2, rng, a);
        bool inside = true;
        for (double v : a) {
            if (v < 0.0 || v > 1.0) {
                inside = false;
                break;
            }
        }
        if (inside) return PowerSplit(std::move(a));
    }
    throw rejection_stall_error("sample_split: acceptance rate below " +
                                std::to_string(1.0 / kStallWindow) + " (N=" + std::to_string(n) +
                                ", sigma2=" + std::to_string(model.sigma2) + ")");
}

double split_density(const PowerSplit& a, const LanternModel& model, double c2) {
    if (a.size() != model.n_smf)
        throw std::invalid_argument("split_density: split size does not match model");
    switch (model.kind()) {
        case LanternModel::Kind::Degenerate:
            throw std::domain_error("split_density: degenerate model is a point mass");
        case LanternModel::Kind::Uniform:
            return std::tgamma(static_cast<double>(model.n_smf));  // (N-1)!
        case LanternModel::Kind::TruncGaussian:
            break;
    }
    if (!(c2 > 0.0) || !std::isfinite(c2))
        throw std::invalid_argument("split_density: truncated Gaussian needs c2 > 0");

    // Quadratic form of sigma_star_inverse in closed form:
    // x' (I + ones) x = sum(x^2) + (sum x)^2 over the first N-1 coordinates.
    const int n = model.n_smf;
    const double mu = 1.0 / n;
    double sum_sq = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        const double x = a.ratios()[i] - mu;
        sum_sq += x * x;
        sum += x;
    }
    const double scale = (n - 1.0) / (n * model.sigma2);
    const double quad = scale * (sum_sq + sum * sum);
    return std::exp(-0.5 * quad) / c2;
}

SquareMatrix sigma_star_inverse(int n_smf, double sigma2) {
    if (n_smf < 2) throw std::invalid_argument("sigma_star_inverse: requires n_smf >= 2");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma_star_inverse: requires sigma2 > 0");
    const int m = n_smf - 1;
    const double scale = (n_smf - 1.0) / (n_smf * sigma2);
    SquareMatrix inv(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) inv.at(i, j) = scale * (i == j ? 2.0 : 1.0);
    return inv;
}

double gaussian_normalization_c3(int n_smf, double sigma2) {
    if (n_smf < 2 || !(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("gaussian_normalization_c3: needs n_smf >= 2, finite sigma2 > 0");
    const double n = n_smf;
    return std::pow(2.0 * std::numbers::pi * sigma2 * n / (n - 1.0), 0.5 * (n - 1.0)) /
           std::sqrt(n);
}

mci::MciEstimate normalization_c2(const LanternModel& model, std::int64_t n_samples,
                                  SeededRng& rng) {
    if (model.kind() != LanternModel::Kind::TruncGaussian)
        throw std::invalid_argument("normalization_c2: model must be truncated Gaussian");
    const int n = model.n_smf;
    const double c3 = gaussian_normalization_c3(n, model.sigma2);

    std::vector<double> a(n);
    auto sampler = [&](SeededRng& r) -> const std::vector<double>& {
        propose_constrained_gaussian(n, model.sigma2, r, a);
        return a;
    };
    auto objective = [c3](const std::vector<double>& v) {
        for (double x : v)
            if (x < 0.0 || x > 1.0) return 0.0;
        return c3;
    };
    const mci::MciEstimate est = mci::mci_estimate(sampler, objective, n_samples, rng);

    if (!(est.value > 0.0) || est.std_error > 0.1 * est.value)
        throw insufficient_samples_error(
            "normalization_c2: relative std error above 10% at n_samples=" +
            std::to_string(n_samples));
    return est;
}

}  // namespace fsoc::lantern
