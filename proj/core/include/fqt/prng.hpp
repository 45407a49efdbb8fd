#pragma once

#include <cstdint>

namespace fqt {

// Counter-based deterministic PRNG. Draws and child streams are derived from
// (key, counter) pairs, so adding a split() in one code path never perturbs
// the draws of sibling paths. Output is platform independent.
class Rng {
   public:
    explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    uint64_t next_u64() { return mix(key_ ^ (0xd1b54a32d192ed03ull + draw_counter_++ * 0x2545f4914f6cdd1dull)); }

    // Uniform in [0, n), n >= 1. Rejection sampling keeps it exactly uniform.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    Rng split() { return Rng(SplitTag{}, mix(key_ ^ (0xbf58476d1ce4e5b9ull + split_counter_++ * 0x94d049bb133111ebull))); }

   private:
    struct SplitTag {};
    Rng(SplitTag, uint64_t key) : key_(key) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t key_;
    uint64_t draw_counter_ = 0;
    uint64_t split_counter_ = 0;
};

}  // namespace fqt
