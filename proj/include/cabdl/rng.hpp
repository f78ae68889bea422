#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

namespace cabdl {

// Seeded random stream. All randomized behavior in the library draws from
// one of these so that a run is fully determined by its seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). Rejection sampling keeps the result
    // independent of the standard library's distribution implementation.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound <= 1)
            return 0;
        std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Independent substream keyed by tag.
    Rng split(std::uint64_t tag) const { return Rng(mix(seed_ ^ mix(tag + 0x9e3779b97f4a7c15ULL))); }

    template <class It>
    void shuffle(It first, It last)
    {
        auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            auto j = below(i);
            std::iter_swap(first + (i - 1), first + j);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace cabdl
