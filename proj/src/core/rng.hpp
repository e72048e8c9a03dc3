#pragma once

#include <bit>
#include <cstdint>
#include <string_view>

namespace lodefix {

inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256**. The std engines are portable but std::uniform_*_distribution
// is not, and a seeded repair run must produce byte-identical output on every
// platform, so all draws are hand-rolled on top of the raw generator.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, bound); unbiased via masked rejection
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        const uint64_t mask = ~uint64_t{0} >> std::countl_zero(bound - 1);
        for (;;) {
            const uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

    // uniform in [lo, hi], inclusive
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

    // uniform in [0, 1)
    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return unit() < p; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
};

inline constexpr uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv1a64(uint64_t hash, std::string_view text) {
    for (unsigned char c : text) {
        hash ^= c;
        hash *= kFnvPrime;
    }
    return hash;
}

inline uint64_t fnv1a64(uint64_t hash, uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        hash ^= (value >> (i * 8)) & 0xffu;
        hash *= kFnvPrime;
    }
    return hash;
}

} // namespace lodefix
