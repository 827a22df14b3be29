#include "intmat/sampling.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "intmat/errors.hpp"

namespace intmat {

EntryDistribution EntryDistribution::uniform_symmetric(std::int64_t m) {
    if (m < 0) throw DomainError("uniform_symmetric: m must be >= 0");
    if (m > (std::int64_t{1} << 62)) throw DomainError("uniform_symmetric: m too large");
    EntryDistribution d;
    d.kind_ = Kind::UniformSymmetric;
    d.max_abs_ = m;
    return d;
}

EntryDistribution EntryDistribution::custom(std::vector<std::int64_t> support, std::vector<mpq_class> pmf) {
    if (support.empty()) throw DomainError("custom distribution: empty support");
    if (support.size() != pmf.size()) throw DomainError("custom distribution: support and pmf lengths differ");
    if (std::set<std::int64_t>(support.begin(), support.end()).size() != support.size()) {
        throw DomainError("custom distribution: support values must be distinct");
    }
    mpq_class total = 0;
    for (auto& p : pmf) {
        p.canonicalize();
        if (sgn(p) < 0) throw DomainError("custom distribution: negative mass");
        total += p;
    }
    if (total != 1) throw DomainError("custom distribution: masses sum to " + total.get_str() + ", not 1");

    std::vector<std::size_t> order(support.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });

    EntryDistribution d;
    d.kind_ = Kind::Custom;
    mpq_class cumulative = 0;
    const mpz_class grid = mpz_class(1) << 64;
    for (std::size_t i : order) {
        d.support_.push_back(support[i]);
        d.pmf_.push_back(pmf[i]);
        d.max_abs_ = std::max(d.max_abs_, support[i] < 0 ? -support[i] : support[i]);
        cumulative += pmf[i];
        mpz_class scaled = cumulative.get_num() * grid / cumulative.get_den();
        if (scaled >= grid) scaled = grid - 1;
        d.thresholds_.push_back(mpz_get_ui(scaled.get_mpz_t()));
    }
    return d;
}

std::int64_t EntryDistribution::sample_custom(Pcg64& gen) const noexcept {
    const std::uint64_t u = gen();
    const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end() - 1, u);
    return support_[static_cast<std::size_t>(it - thresholds_.begin())];
}

mpq_class EntryDistribution::max_probability() const {
    if (kind_ == Kind::UniformSymmetric) return mpq_class(1, 2 * max_abs_ + 1);
    return *std::max_element(pmf_.begin(), pmf_.end());
}

mpq_class EntryDistribution::probability(std::int64_t v) const {
    if (kind_ == Kind::UniformSymmetric) {
        return (v >= -max_abs_ && v <= max_abs_) ? mpq_class(1, 2 * max_abs_ + 1) : mpq_class(0);
    }
    const auto it = std::lower_bound(support_.begin(), support_.end(), v);
    if (it == support_.end() || *it != v) return 0;
    return pmf_[static_cast<std::size_t>(it - support_.begin())];
}

std::string EntryDistribution::describe() const {
    if (kind_ == Kind::UniformSymmetric) return "uniform_symmetric(m=" + std::to_string(max_abs_) + ")";
    return "custom(support_size=" + std::to_string(support_.size()) + ")";
}

IntMatrix sample_matrix(std::size_t n, std::size_t k, const EntryDistribution& dist, Seed seed) {
    if (n == 0 || k == 0) throw DimensionError("sample_matrix: n and k must be >= 1");
    Pcg64 gen(seed);
    std::vector<std::int64_t> entries(n * k);
    dist.fill(entries, gen);
    return IntMatrix::from_small(n, k, entries);
}

IntMatrix sample_vector(std::size_t n, const EntryDistribution& dist, Seed seed) {
    return sample_matrix(n, 1, dist, seed);
}

EntryDistribution vempala_sum_distribution(const mpq_class& mu, std::int64_t m) {
    if (!(mu > 0 && mu < 1)) throw DomainError("vempala_sum_distribution: mu must lie in (0, 1)");
    if (m < 1) throw DomainError("vempala_sum_distribution: m must be >= 1");
    const mpq_class side = mu / 2;
    const mpq_class centre = 1 - mu;
    // pmf[i] is the mass of value i - m.
    std::vector<mpq_class> pmf(1, mpq_class(1));
    for (std::int64_t step = 0; step < m; ++step) {
        std::vector<mpq_class> next(pmf.size() + 2, mpq_class(0));
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            next[i] += pmf[i] * side;
            next[i + 1] += pmf[i] * centre;
            next[i + 2] += pmf[i] * side;
        }
        pmf = std::move(next);
    }
    std::vector<std::int64_t> support(pmf.size());
    for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<std::int64_t>(i) - m;
    return EntryDistribution::custom(std::move(support), std::move(pmf));
}

}  // namespace intmat
