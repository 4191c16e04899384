// Copyright 2026 The rholab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rholab {

/// SplitMix64 finalizer. Used to derive independent child seeds from a
/// master seed plus a stream path; never used as a generator directly.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds a stream path into a master seed: derive_seed(s, {a, b}) names the
/// b-th stream of the a-th stream of s. All randomness in the library flows
/// from one master seed through such derivations; there is no global RNG.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Deterministic random source. The engine (mt19937_64) is bit-exact across
/// platforms per the standard; the distributions are hand-rolled because the
/// stdlib distribution objects are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive, by rejection sampling.
    int uniform_int(int lo, int hi);

    /// Standard normal deviate (Box-Muller; second value of each pair cached).
    double gaussian();

    /// Complex standard normal: (g1 + i g2) / sqrt(2), unit total variance.
    std::complex<double> gaussian_complex() {
        const double re = gaussian();
        const double im = gaussian();
        return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
    }

private:
    std::mt19937_64 engine_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

}  // namespace rholab
