#pragma once

// Binomial estimates with Wilson score intervals, and a sharded runner whose
// output does not depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "intmat/rng.hpp"

namespace intmat {

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

// Two-sided standard-normal quantile for a confidence level in (0, 1).
double z_for_level(double level);

// Wilson score interval. With zero hits the lower end is 0 and the upper end
// is the one-sided bound -ln(1 - level) / trials (the rule of three, 3/trials,
// at the 95% level).
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level = 0.95);

struct EstimateReport {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double level = 0.95;
    Seed seed;
    std::size_t n = 0;
    std::int64_t m = 0;
    double elapsed = 0.0;  // seconds, wall clock
};

EstimateReport make_estimate(std::uint64_t hits, std::uint64_t trials, double level = 0.95);

inline constexpr std::uint64_t kShardTrials = 1u << 14;

// Splits `trials` into fixed-size shards; shard i draws from
// Pcg64::for_shard(seed, i) and reports its hit count through
// `shard(gen, count)`. Counts are folded in shard order.
template <typename ShardFn>
std::uint64_t run_sharded(std::uint64_t trials, Seed seed, unsigned threads, ShardFn&& shard) {
    const std::uint64_t shards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<std::uint64_t> hits(shards, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t s = next.fetch_add(1); s < shards; s = next.fetch_add(1)) {
            const std::uint64_t count = std::min(kShardTrials, trials - s * kShardTrials);
            Pcg64 gen = Pcg64::for_shard(seed, s);
            hits[s] = shard(gen, count);
        }
    };
    const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(shards, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    return total;
}

}  // namespace intmat
