// SPDX-License-Identifier: Apache-2.0
// Deterministic random number generation.
//
// The library owns its generator (xoshiro256++) instead of using
// std::mt19937 with standard distributions because the C++ standard does
// not pin down distribution output, and identical streams across
// compilers are part of the reproducibility contract.

#pragma once

#include <cmath>
#include <cstdint>

namespace umwd {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t &state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Derives an independent stream seed from a root seed, a consumer tag and
// an index. One top-level seed reproduces every stream in a run.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t s = root;
    (void)detail::splitmix64(s);
    s ^= 0xd1b54a32d192ed03ULL * (tag + 1);
    (void)detail::splitmix64(s);
    s ^= 0x8bb84b93962eacc9ULL * (index + 1);
    return detail::splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto &word : state_)
            word = detail::splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace umwd
