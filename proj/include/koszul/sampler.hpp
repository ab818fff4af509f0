#pragma once

#include <cstdint>

namespace koszul {

/* SplitMix64: platform-independent deterministic sampler for the randomized
 * test selections; the seed is recorded alongside every sampled report. */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /* uniform-ish in [0, n) */
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    long long int_in(long long lo, long long hi) { /* inclusive */
        return lo + (long long)below(std::uint64_t(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

} // namespace koszul
