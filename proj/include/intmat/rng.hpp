#pragma once

// PCG64 (XSL-RR 128/64) with selectable stream.
//
// A (value, stream) Seed pins down every draw. The stream picks the LCG
// increment, so two streams walk different sequences through the same state
// space. Monte Carlo shards derive their own stream from the run's stream and
// the shard index, which makes shard output independent of which thread runs
// it.

#include <cstdint>
#include <limits>

namespace intmat {

struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Pcg64 {
public:
    using result_type = std::uint64_t;

    explicit Pcg64(Seed seed) noexcept {
        const unsigned __int128 stream = (static_cast<unsigned __int128>(mix64(seed.stream)) << 64) | seed.stream;
        inc_ = (stream << 1) | 1u;
        state_ = 0;
        step();
        state_ += (static_cast<unsigned __int128>(mix64(seed.value ^ 0xDA3E39CB94B95BDBULL)) << 64) | seed.value;
        step();
    }

    // Generator for shard `index` of a run seeded with `seed`.
    static Pcg64 for_shard(Seed seed, std::uint64_t index) noexcept {
        return Pcg64(Seed{seed.value, mix64(seed.stream ^ mix64(index + 0x632BE59BD9B4E019ULL))});
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const unsigned __int128 old = state_;
        step();
        const auto hi = static_cast<std::uint64_t>(old >> 64);
        const auto lo = static_cast<std::uint64_t>(old);
        const unsigned rot = static_cast<unsigned>(old >> 122);
        const std::uint64_t x = hi ^ lo;
        return (x >> rot) | (x << ((-rot) & 63u));
    }

    // Uniform integer in [0, bound] by rejection from the enclosing
    // power-of-two range (no modulo bias).
    std::uint64_t uniform_to(std::uint64_t bound) noexcept {
        if (bound == 0) return 0;
        const int lz = __builtin_clzll(bound);
        const std::uint64_t mask = lz == 0 ? ~0ULL : (~0ULL >> lz);
        for (;;) {
            const std::uint64_t x = (*this)() & mask;
            if (x <= bound) return x;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr unsigned __int128 kMultiplier =
        (static_cast<unsigned __int128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;

    void step() noexcept { state_ = state_ * kMultiplier + inc_; }

    unsigned __int128 state_;
    unsigned __int128 inc_;
};

}  // namespace intmat
