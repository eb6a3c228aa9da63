// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_RNG_HPP
#define FSOC_RNG_HPP

#include <cstdint>
#include <random>

namespace fsoc {

namespace detail {

// SplitMix64 step; used for seed expansion and substream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic seeded random stream.
///
/// A SeededRng remembers its seed, so independent child streams can be
/// derived at any time with fork() without consuming generator state.
/// Workers are expected to hold one SeededRng each, derived as
/// master.fork(worker_index).
class SeededRng {
  public:
    using engine_type = std::mt19937_64;

    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(expand(seed)) {}

    /// Derive an independent stream keyed by (this seed, stream index).
    /// Does not consume state; fork(k) on the same parent always yields
    /// the same child.
    SeededRng fork(std::uint64_t stream) const {
        std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL));
        return SeededRng(detail::splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }
    engine_type& engine() { return engine_; }

    /// Uniform draw on [0, 1).
    double uniform01() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

  private:
    static engine_type expand(std::uint64_t seed) {
        // mt19937_64 seeded from a SplitMix64-expanded sequence.
        std::uint64_t s = seed;
        std::seed_seq seq{detail::splitmix64(s), detail::splitmix64(s), detail::splitmix64(s),
                          detail::splitmix64(s)};
        return engine_type(seq);
    }

    std::uint64_t seed_;
    engine_type engine_;
};

}  // namespace fsoc

#endif
