#include "intmat/mds_forge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "intmat/sampling.hpp"

namespace intmat {

namespace {

// Advance `comb` (strictly increasing, values < n) to the next k-subset in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

std::string dims(std::size_t k, std::size_t n) { return std::to_string(k) + "x" + std::to_string(n); }

}  // namespace

MdsVerdict is_mds(const IntMatrix& m) {
    const std::size_t k = m.rows();
    const std::size_t n = m.cols();
    if (k > n) throw DimensionError("is_mds: need k <= n, got " + dims(k, n));

    MdsVerdict verdict;
    const std::vector<std::int64_t> small = m.to_small();
    std::vector<std::int64_t> minor(k * k);
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    do {
        ++verdict.minors_checked;
        bool singular;
        if (!small.empty()) {
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t j = 0; j < k; ++j) minor[r * k + j] = small[r * n + comb[j]];
            singular = is_singular(minor, k);
        } else {
            singular = is_singular(m.select_columns(comb));
        }
        if (singular) {
            verdict.is_mds = false;
            verdict.witness = comb;
            return verdict;
        }
    } while (next_combination(comb, n));
    verdict.is_mds = true;
    return verdict;
}

GenerationReport generate_mds(std::size_t k, std::size_t n, std::int64_t m, std::uint64_t max_attempts, Seed seed) {
    if (k == 0 || k > n) throw DimensionError("generate_mds: need 1 <= k <= n, got " + dims(k, n));
    if (m < 1) throw DomainError("generate_mds: m must be >= 1");
    if (max_attempts == 0) throw DomainError("generate_mds: max_attempts must be >= 1");
    const EntryDistribution dist = EntryDistribution::uniform_symmetric(m);
    Pcg64 gen(seed);
    std::vector<std::int64_t> entries(k * n);
    std::vector<std::size_t> last_witness;
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        dist.fill(entries, gen);
        IntMatrix candidate = IntMatrix::from_small(k, n, entries);
        MdsVerdict verdict = is_mds(candidate);
        if (verdict.is_mds) return GenerationReport{std::move(candidate), attempt, m, seed};
        last_witness = std::move(*verdict.witness);
    }
    throw GenerationFailure("generate_mds: no " + dims(k, n) + " MDS matrix over m=" + std::to_string(m) +
                                " within " + std::to_string(max_attempts) + " attempts",
                            max_attempts, std::move(last_witness));
}

std::int64_t default_generation_m(std::size_t k, std::size_t n, double c) {
    if (k == 0 || k > n) throw DimensionError("default_generation_m: need 1 <= k <= n, got " + dims(k, n));
    if (!(c > 0.0 && c <= 1.0)) throw DomainError("default_generation_m: c must lie in (0, 1]");
    constexpr double kCap = 1099511627776.0;  // 2^40
    const double kd = static_cast<double>(k);
    const double base = std::numbers::e * static_cast<double>(n) * std::pow(2.0, 1.0 / kd) / kd;
    const double m = std::ceil(std::pow(base, 1.0 / c));
    if (!(m < kCap)) return static_cast<std::int64_t>(kCap);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

GenerationReport generate_mds_auto(std::size_t k, std::size_t n, std::uint64_t max_attempts, Seed seed,
                                   unsigned max_doublings) {
    std::int64_t m = default_generation_m(k, n);
    for (unsigned round = 0;; ++round) {
        try {
            return generate_mds(k, n, m, max_attempts, seed);
        } catch (const GenerationFailure&) {
            if (round >= max_doublings || m > (std::int64_t{1} << 61)) throw;
            m *= 2;
        }
    }
}

std::uint64_t pigeonhole_min_alphabet(std::size_t k, std::size_t n) {
    if (k < 2) throw DomainError("pigeonhole_min_alphabet: needs k >= 2");
    // Smallest s with s^2 * k >= n.
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n) / static_cast<double>(k)));
    while (s > 0 && (s - 1) * (s - 1) * k >= n) --s;
    while (s * s * k < n) ++s;
    return s;
}

std::optional<std::vector<std::size_t>> pigeonhole_witness(const IntMatrix& m) {
    const std::size_t k = m.rows();
    if (k < 2) return std::nullopt;
    std::map<std::pair<mpz_class, mpz_class>, std::vector<std::size_t>> buckets;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto& bucket = buckets[{m(0, c), m(1, c)}];
        bucket.push_back(c);
        if (bucket.size() == k) return bucket;
    }
    return std::nullopt;
}

double union_bound_failure(std::size_t k, std::size_t n, std::int64_t m, double c) {
    if (!(c > 0.0 && c <= 1.0)) throw DomainError("union_bound_failure: c must lie in (0, 1]");
    if (k == 0) throw DomainError("union_bound_failure: k must be >= 1");
    if (m < 1) throw DomainError("union_bound_failure: m must be >= 1");
    const double kd = static_cast<double>(k);
    const double ratio = std::numbers::e * static_cast<double>(n) / (kd * std::pow(static_cast<double>(m), c));
    return std::clamp(std::pow(ratio, kd), 0.0, 1.0);
}

}  // namespace intmat
