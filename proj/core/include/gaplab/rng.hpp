#pragma once

#include <cstdint>

namespace gaplab {

// Seed for one reproducible random stream.  Every randomized routine takes a
// (master_seed, stream_index) pair instead of a shared generator, so trials
// can run in any order (or in parallel) and still produce identical results.
struct RngSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// SplitMix64 (Steele, Lea, Flood 2014).  Used only to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ 1.0 (Blackman, Vigna 2019), state expanded from the seed pair
// via SplitMix64.  Pinned here rather than <random> because the standard
// distributions are not bit-reproducible across library implementations;
// every uniform draw in this project goes through this class.
class Xoshiro256PlusPlus {
  public:
    explicit Xoshiro256PlusPlus(RngSeed seed) {
        // Decorrelate streams: fold the stream index into the SplitMix64
        // starting point with a distinct odd multiplier.
        std::uint64_t sm = seed.master_seed ^ (0xA24BAED4963EE407ULL * (seed.stream_index + 1));
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace gaplab
