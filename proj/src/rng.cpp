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

#include "rholab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rholab {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : path) {
        s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    }
    return s;
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1ULL;
    const std::uint64_t limit = range * (UINT64_MAX / range);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return lo + static_cast<int>(x % range);
}

double Rng::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    // 1 - u in (0, 1] keeps the log finite.
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    cached_gaussian_ = r * std::sin(theta);
    has_cached_gaussian_ = true;
    return r * std::cos(theta);
}

}  // namespace rholab
