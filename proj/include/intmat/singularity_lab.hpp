#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "intmat/monte_carlo.hpp"
#include "intmat/rng.hpp"
#include "intmat/sampling.hpp"

namespace intmat {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// Monte Carlo estimate of Pr[M singular] for M with i.i.d. entries from
// `dist`. Each trial is decided exactly. The report's n/m/seed are filled in;
// m is dist.max_abs().
EstimateReport mc_singularity(std::size_t n, const EntryDistribution& dist, std::uint64_t trials, Seed seed,
                              unsigned threads = 1, double level = 0.95);

// Exact fraction of singular n x n matrices over {-m..m}, by enumerating all
// (2m+1)^(n^2) matrices in row-major odometer order. Throws BudgetExceeded
// when that count is above `budget`.
mpq_class exact_singular_fraction(std::size_t n, std::int64_t m, std::uint64_t budget = kDefaultEnumerationBudget);

// (2m+1)^-n: the probability that the first two rows coincide. Needs n >= 2.
mpq_class lower_bound(std::size_t n, std::int64_t m);

// min(1, n/m).
mpq_class schwartz_zippel_bound(std::size_t n, std::int64_t m);

struct FitPoint {
    std::size_t n = 0;
    std::int64_t m = 0;
    double probability = 0.0;
};

// Least-squares fit of log p = -c * n * log m + b.
struct ExponentFit {
    std::vector<FitPoint> points;  // the points actually used (p > 0)
    double c_hat = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual in natural-log units
};

// Points with p = 0 are dropped. Throws FitError with fewer than three
// usable points, any m < 2, or no spread in n*log(m).
ExponentFit fit_exponent(std::span<const FitPoint> points);

// True when `later` is larger than `earlier` beyond CI overlap, i.e. the two
// intervals are disjoint with `later` on top.
inline bool increases_beyond_ci(const EstimateReport& earlier, const EstimateReport& later) {
    return later.ci_low > earlier.ci_high;
}

}  // namespace intmat
