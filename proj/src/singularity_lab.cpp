#include "intmat/singularity_lab.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "intmat/errors.hpp"
#include "intmat/exact_linalg.hpp"

namespace intmat {

EstimateReport mc_singularity(std::size_t n, const EntryDistribution& dist, std::uint64_t trials, Seed seed,
                              unsigned threads, double level) {
    if (n == 0) throw DomainError("mc_singularity: n must be >= 1");
    if (trials == 0) throw DomainError("mc_singularity: trials must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t hits = run_sharded(trials, seed, threads, [&](Pcg64& gen, std::uint64_t count) {
        std::vector<std::int64_t> buffer(n * n);
        std::uint64_t singular = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            dist.fill(buffer, gen);
            if (is_singular(buffer, n)) ++singular;
        }
        return singular;
    });
    EstimateReport report = make_estimate(hits, trials, level);
    report.seed = seed;
    report.n = n;
    report.m = dist.max_abs();
    report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

mpq_class exact_singular_fraction(std::size_t n, std::int64_t m, std::uint64_t budget) {
    if (n == 0) throw DomainError("exact_singular_fraction: n must be >= 1");
    if (m < 0) throw DomainError("exact_singular_fraction: m must be >= 0");
    const std::size_t cells = n * n;
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(2 * m + 1), static_cast<unsigned long>(cells));
    if (total > mpz_class(static_cast<unsigned long>(budget))) {
        throw BudgetExceeded("exact_singular_fraction: enumeration needs " + total.get_str() +
                             " matrices, budget is " + std::to_string(budget));
    }

    // Row-major odometer; the last entry turns fastest.
    std::vector<std::int64_t> entries(cells, -m);
    std::uint64_t singular = 0;
    for (;;) {
        if (is_singular(entries, n)) ++singular;
        std::size_t pos = cells;
        while (pos > 0 && entries[pos - 1] == m) entries[--pos] = -m;
        if (pos == 0) break;
        ++entries[pos - 1];
    }
    mpq_class out(mpz_class(static_cast<unsigned long>(singular)), total);
    out.canonicalize();
    return out;
}

mpq_class lower_bound(std::size_t n, std::int64_t m) {
    if (n < 2) throw DomainError("lower_bound: needs n >= 2 (two equal rows)");
    if (m < 0) throw DomainError("lower_bound: m must be >= 0");
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(2 * m + 1), static_cast<unsigned long>(n));
    return mpq_class(1, denom);
}

mpq_class schwartz_zippel_bound(std::size_t n, std::int64_t m) {
    if (m < 1) throw DomainError("schwartz_zippel_bound: m must be >= 1");
    mpq_class ratio(mpz_class(static_cast<unsigned long>(n)), mpz_class(static_cast<long>(m)));
    ratio.canonicalize();
    return ratio > 1 ? mpq_class(1) : ratio;
}

ExponentFit fit_exponent(std::span<const FitPoint> points) {
    ExponentFit fit;
    for (const auto& p : points) {
        if (p.m < 2) throw FitError("fit_exponent: every point needs m >= 2");
        if (!(p.probability >= 0.0 && p.probability <= 1.0)) throw FitError("fit_exponent: probability outside [0, 1]");
        if (p.probability > 0.0) fit.points.push_back(p);
    }
    if (fit.points.size() < 3) {
        throw FitError("fit_exponent: need at least 3 points with probability > 0, got " +
                       std::to_string(fit.points.size()));
    }
    const double count = static_cast<double>(fit.points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& p : fit.points) {
        mean_x += -static_cast<double>(p.n) * std::log(static_cast<double>(p.m));
        mean_y += std::log(p.probability);
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : fit.points) {
        const double dx = -static_cast<double>(p.n) * std::log(static_cast<double>(p.m)) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(p.probability) - mean_y);
    }
    if (sxx <= 0.0) throw FitError("fit_exponent: all points share the same n*log(m)");
    fit.c_hat = sxy / sxx;
    fit.intercept = mean_y - fit.c_hat * mean_x;
    double ss = 0.0;
    for (const auto& p : fit.points) {
        const double x = -static_cast<double>(p.n) * std::log(static_cast<double>(p.m));
        const double r = std::log(p.probability) - (fit.c_hat * x + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

}  // namespace intmat
