#pragma once

#include <cstdint>
#include <vector>

namespace nmcode {

// Deterministic RNG used everywhere randomness is needed. Standard-library
// distributions are implementation-defined, so all derivations and draws are
// spelled out here to keep outputs byte-identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // splitmix64 step
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derive an independent child stream. Used for the seed tree:
    // global seed -> command -> module -> trial index.
    Rng child(uint64_t tag) const {
        Rng t(state_ ^ (0xa0761d6478bd642fULL * (tag + 1)));
        t.next();
        return t;
    }

    // Unbiased uniform draw from [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    bool coin() { return next() & 1; }

    // Uniform k-subset of {0,...,n-1}, returned sorted.
    std::vector<uint32_t> subset(uint32_t n, uint32_t k);

private:
    uint64_t state_;
};

} // namespace nmcode
