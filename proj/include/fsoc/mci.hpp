// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_MCI_HPP
#define FSOC_MCI_HPP

#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsoc/errors.hpp"
#include "fsoc/rng.hpp"

namespace fsoc::mci {

/// Monte-Carlo integration result: sample mean of the objective under the
/// sampling density, with its standard error.
struct MciEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

/// One-pass mean/variance accumulator (Welford), mergeable across workers
/// via the (count, mean, M2) triple.
class WelfordAccumulator {
  public:
    void add(double x) {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    void merge(const WelfordAccumulator& other) {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count_);
        const double nb = static_cast<double>(other.count_);
        const double delta = other.mean_ - mean_;
        const double n = na + nb;
        mean_ += delta * nb / n;
        m2_ += other.m2_ + delta * delta * na * nb / n;
        count_ += other.count_;
    }

    std::int64_t count() const { return count_; }
    double mean() const { return mean_; }
    double m2() const { return m2_; }

    /// Unbiased sample variance; 0 until two samples are seen.
    double variance() const {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }

    double std_error() const {
        return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

    MciEstimate estimate() const { return {mean_, std_error(), count_}; }

  private:
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Paired accumulator for the sample Pearson correlation of two series.
class BivariateAccumulator {
  public:
    void add(double x, double y) {
        ++count_;
        const double n = static_cast<double>(count_);
        const double dx = x - mean_x_;
        const double dy = y - mean_y_;
        mean_x_ += dx / n;
        mean_y_ += dy / n;
        m2x_ += dx * (x - mean_x_);
        m2y_ += dy * (y - mean_y_);
        cxy_ += dx * (y - mean_y_);
    }

    void merge(const BivariateAccumulator& other) {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count_);
        const double nb = static_cast<double>(other.count_);
        const double n = na + nb;
        const double dx = other.mean_x_ - mean_x_;
        const double dy = other.mean_y_ - mean_y_;
        mean_x_ += dx * nb / n;
        mean_y_ += dy * nb / n;
        m2x_ += other.m2x_ + dx * dx * na * nb / n;
        m2y_ += other.m2y_ + dy * dy * na * nb / n;
        cxy_ += other.cxy_ + dx * dy * na * nb / n;
        count_ += other.count_;
    }

    std::int64_t count() const { return count_; }
    double mean_x() const { return mean_x_; }
    double mean_y() const { return mean_y_; }

    double pearson() const {
        if (count_ < 2) return 0.0;
        const double denom = std::sqrt(m2x_ * m2y_);
        return denom > 0.0 ? cxy_ / denom : 0.0;
    }

    /// Large-sample standard error of the correlation estimate.
    double pearson_std_error() const {
        if (count_ < 3) return 0.0;
        const double r = pearson();
        return (1.0 - r * r) / std::sqrt(static_cast<double>(count_ - 1));
    }

  private:
    std::int64_t count_ = 0;
    double mean_x_ = 0.0, mean_y_ = 0.0;
    double m2x_ = 0.0, m2y_ = 0.0, cxy_ = 0.0;
};

/// Estimate E_f[objective(X)] by averaging over n_samples draws from the
/// sampling density (sampler(rng) -> X, objective(X) -> double).
///
/// A non-finite objective value signals a sampler/objective support
/// mismatch and throws numeric_error.
template <class Sampler, class Objective>
MciEstimate mci_estimate(Sampler&& sampler, Objective&& objective, std::int64_t n_samples,
                         SeededRng& rng) {
    if (n_samples < 2) throw std::invalid_argument("mci_estimate: requires n_samples >= 2");
    WelfordAccumulator acc;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const double value = objective(sampler(rng));
        if (!std::isfinite(value))
            throw numeric_error("mci_estimate: non-finite objective value (support mismatch?)");
        acc.add(value);
    }
    return acc.estimate();
}

/// Partitioned variant: trials are split across `workers` streams, each
/// seeded as base_rng.fork(worker_index), and the per-worker (count, mean,
/// M2) triples are merged in worker order. Results are bitwise reproducible
/// for a fixed (seed, n_samples, workers) triple regardless of scheduling.
template <class Sampler, class Objective>
MciEstimate mci_estimate_partitioned(Sampler&& sampler, Objective&& objective,
                                     std::int64_t n_samples, const SeededRng& base_rng,
                                     int workers) {
    if (workers < 1) throw std::invalid_argument("mci_estimate_partitioned: workers >= 1");
    if (n_samples < 2) throw std::invalid_argument("mci_estimate: requires n_samples >= 2");

    const std::int64_t chunk = n_samples / workers;
    std::vector<std::future<WelfordAccumulator>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::int64_t count = (w == workers - 1) ? n_samples - chunk * (workers - 1) : chunk;
        futures.push_back(std::async(std::launch::async, [&, w, count]() {
            SeededRng rng = base_rng.fork(static_cast<std::uint64_t>(w));
            WelfordAccumulator acc;
            for (std::int64_t i = 0; i < count; ++i) {
                const double value = objective(sampler(rng));
                if (!std::isfinite(value))
                    throw numeric_error("mci_estimate: non-finite objective value");
                acc.add(value);
            }
            return acc;
        }));
    }

    WelfordAccumulator total;
    for (auto& f : futures) total.merge(f.get());
    return total.estimate();
}

}  // namespace fsoc::mci

#endif
