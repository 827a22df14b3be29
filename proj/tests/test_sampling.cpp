#include <doctest.h>

#include <cmath>
#include <map>
#include <unordered_set>

#include <boost/math/distributions/chi_squared.hpp>

#include "intmat/errors.hpp"
#include "intmat/sampling.hpp"

using namespace intmat;

namespace {

double chi_square_quantile(double df, double level) {
    return boost::math::quantile(boost::math::chi_squared(df), level);
}

// Pearson statistic of observed counts against expected probabilities.
double pearson(const std::map<std::int64_t, double>& counts, const std::map<std::int64_t, double>& probs,
               double total) {
    double stat = 0.0;
    for (const auto& [v, p] : probs) {
        const auto it = counts.find(v);
        const double observed = it == counts.end() ? 0.0 : it->second;
        const double expected = p * total;
        stat += (observed - expected) * (observed - expected) / expected;
    }
    return stat;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("sample_matrix is a pure function of its arguments") {
    const auto d = EntryDistribution::uniform_symmetric(3);
    const Seed s{42, 7};
    CHECK(sample_matrix(5, 7, d, s) == sample_matrix(5, 7, d, s));
    CHECK_FALSE(sample_matrix(5, 7, d, s) == sample_matrix(5, 7, d, Seed{42, 8}));
    CHECK_FALSE(sample_matrix(5, 7, d, s) == sample_matrix(5, 7, d, Seed{43, 7}));
    CHECK(sample_vector(9, d, s) == sample_vector(9, d, s));
    CHECK_THROWS_AS(sample_matrix(0, 3, d, s), DimensionError);
}

TEST_CASE("m = 0 gives the zero matrix") {
    const IntMatrix z = sample_matrix(4, 6, EntryDistribution::uniform_symmetric(0), Seed{1, 0});
    for (const auto& e : z.entries()) CHECK(e == 0);
}

TEST_CASE("uniform_symmetric(2) frequencies pass a chi-square test") {
    const auto d = EntryDistribution::uniform_symmetric(2);
    const IntMatrix m = sample_matrix(1000, 100, d, Seed{2024, 0});
    std::map<std::int64_t, double> counts;
    for (const auto& e : m.entries()) counts[e.get_si()] += 1.0;
    std::map<std::int64_t, double> probs;
    for (std::int64_t v = -2; v <= 2; ++v) probs[v] = 0.2;
    CHECK(counts.size() == 5);
    CHECK(pearson(counts, probs, 1e5) < chi_square_quantile(4, 0.999));
}

TEST_CASE("sample_vector stays in range and is centred") {
    for (std::int64_t m : {1, 4, 16}) {
        const auto d = EntryDistribution::uniform_symmetric(m);
        const IntMatrix v = sample_vector(100000, d, Seed{static_cast<std::uint64_t>(m), 3});
        CHECK(v.cols() == 1);
        double sum = 0.0;
        for (const auto& e : v.entries()) {
            REQUIRE(e >= -m);
            REQUIRE(e <= m);
            sum += e.get_d();
        }
        // Var of one entry: sum_{v=-m}^{m} v^2 / (2m+1) = m(m+1)/3.
        const double sigma = std::sqrt(static_cast<double>(m * (m + 1)) / 3.0 / 1e5);
        CHECK(std::abs(sum / 1e5) < 4.0 * sigma);
    }
}

TEST_CASE("distinct streams do not overlap in their first 2^20 draws") {
    Pcg64 a(Seed{99, 0});
    Pcg64 b(Seed{99, 1});
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1u << 21);
    for (int i = 0; i < (1 << 20); ++i) seen.insert(a());
    std::size_t collisions = 0;
    for (int i = 0; i < (1 << 20); ++i) collisions += seen.count(b());
    CHECK(collisions == 0);
}

TEST_CASE("shard generators differ from each other and from the base stream") {
    const Seed s{5, 0};
    Pcg64 base(s);
    Pcg64 s0 = Pcg64::for_shard(s, 0);
    Pcg64 s1 = Pcg64::for_shard(s, 1);
    const auto b = base(), x0 = s0(), x1 = s1();
    CHECK(x0 != x1);
    CHECK(b != x1);
    Pcg64 again = Pcg64::for_shard(s, 1);
    CHECK(again() == x1);
}

TEST_CASE("max_probability") {
    for (std::int64_t m = 0; m <= 10; ++m) {
        CHECK(EntryDistribution::uniform_symmetric(m).max_probability() == mpq_class(1, 2 * m + 1));
    }
    const auto c = EntryDistribution::custom({5, -1, 2}, {mpq_class(1, 6), mpq_class(1, 2), mpq_class(1, 3)});
    CHECK(c.max_probability() == mpq_class(1, 2));
    CHECK(c.max_abs() == 5);
    CHECK(c.probability(2) == mpq_class(1, 3));
    CHECK(c.probability(3) == 0);
}

TEST_CASE("custom distribution validation") {
    CHECK_THROWS_AS(EntryDistribution::custom({}, {}), DomainError);
    CHECK_THROWS_AS(EntryDistribution::custom({1, 1}, {mpq_class(1, 2), mpq_class(1, 2)}), DomainError);
    CHECK_THROWS_AS(EntryDistribution::custom({1, 2}, {mpq_class(1, 2), mpq_class(1, 3)}), DomainError);
    CHECK_THROWS_AS(EntryDistribution::custom({1, 2}, {mpq_class(3, 2), mpq_class(-1, 2)}), DomainError);
    CHECK_THROWS_AS(EntryDistribution::uniform_symmetric(-1), DomainError);
}

TEST_CASE("custom distribution sampling matches its pmf") {
    const auto c = EntryDistribution::custom({-3, 0, 7, 9}, {mpq_class(1, 10), mpq_class(2, 5), mpq_class(0), mpq_class(1, 2)});
    Pcg64 gen(Seed{77, 0});
    std::map<std::int64_t, double> counts;
    for (int i = 0; i < 100000; ++i) counts[c.sample(gen)] += 1.0;
    CHECK(counts.count(7) == 0);
    const std::map<std::int64_t, double> probs{{-3, 0.1}, {0, 0.4}, {9, 0.5}};
    CHECK(pearson(counts, probs, 1e5) < chi_square_quantile(2, 0.999));
}

TEST_CASE("vempala_sum_distribution") {
    const auto one = vempala_sum_distribution(mpq_class(1, 2), 1);
    CHECK(one.support() == std::vector<std::int64_t>{-1, 0, 1});
    CHECK(one.pmf() == std::vector<mpq_class>{mpq_class(1, 4), mpq_class(1, 2), mpq_class(1, 4)});

    // Direct 3 x 3 convolution of (1/4, 1/2, 1/4) with itself.
    const std::vector<mpq_class> base{mpq_class(1, 4), mpq_class(1, 2), mpq_class(1, 4)};
    std::vector<mpq_class> conv(5, mpq_class(0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) conv[static_cast<std::size_t>(i + j)] += base[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(j)];
    const auto two = vempala_sum_distribution(mpq_class(1, 2), 2);
    CHECK(two.support() == std::vector<std::int64_t>{-2, -1, 0, 1, 2});
    CHECK(two.pmf() == conv);

    for (std::int64_t m = 1; m <= 8; ++m) {
        const auto d = vempala_sum_distribution(mpq_class(1, 3), m);
        mpq_class total = 0;
        for (const auto& p : d.pmf()) total += p;
        CHECK(total == 1);
        CHECK(d.max_abs() == m);
    }
    CHECK_THROWS_AS(vempala_sum_distribution(mpq_class(0), 2), DomainError);
    CHECK_THROWS_AS(vempala_sum_distribution(mpq_class(1, 2), 0), DomainError);
}

}  // TEST_SUITE
