// Copyright 2026 The qaml Authors.
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
/**
 * @file
 * Platform-independent pseudo-random generator used for all sampling.
 *
 * The generator is xoshiro256** (Blackman & Vigna) with its 256-bit state
 * filled by four consecutive SplitMix64 outputs of the user seed. Uniform
 * doubles in [0, 1) take the top 53 bits of one 64-bit output. Both steps are
 * fully specified here, so a (seed, draw-count) pair yields the same value on
 * every platform and compiler.
 */
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qaml {

/// One SplitMix64 step; advances `state` and returns the mixed output.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic child seed for stream `index` of `seed`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                                  std::uint64_t index) noexcept {
    std::uint64_t s = seed ^ (index * 0xD1B54A32D192ED03ULL);
    (void)splitmix64(s);
    return splitmix64(s);
}

class Xoshiro256StarStar {
  public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto &word : s_) {
            word = splitmix64(sm);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

} // namespace qaml
