#include <doctest.h>

#include <numeric>
#include <random>

#include "intmat/errors.hpp"
#include "intmat/exact_linalg.hpp"
#include "oracles.hpp"

using namespace intmat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<std::int64_t> e(rows * cols);
    for (auto& v : e) v = d(rng);
    return IntMatrix::from_small(rows, cols, e);
}

}  // namespace

TEST_SUITE("exact_linalg") {

TEST_CASE("det small fixtures") {
    CHECK(det(IntMatrix::identity(3)) == 1);
    CHECK(det(IntMatrix::from_rows({{1, 2}, {3, 4}})) == -2);
    CHECK(det(IntMatrix::from_rows({{7}})) == 7);
    CHECK_THROWS_AS(det(IntMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(is_singular(IntMatrix(3, 2)), DimensionError);
}

TEST_CASE("det matches cofactor expansion on random 5x5 over {-3..3}") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const IntMatrix m = random_matrix(rng, 5, 5, 3);
        REQUIRE(det(m) == oracle::cofactor_det(m));
    }
}

TEST_CASE("det matches cofactor expansion for n <= 4 over {-2..2}") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 1 + i % 4;
        const IntMatrix m = random_matrix(rng, n, n, 2);
        REQUIRE(det(m) == oracle::cofactor_det(m));
    }
}

TEST_CASE("big-integer path agrees with cofactor expansion") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::int64_t> e(16);
        for (auto& v : e) v = d(rng);
        const IntMatrix m = IntMatrix::from_small(4, 4, e);
        REQUIRE(det(m) == oracle::cofactor_det(m));
        REQUIRE(det(std::span<const std::int64_t>(e), 4) == oracle::cofactor_det(m));
    }
    // Entries beyond 64 bits.
    IntMatrix huge(2, 2, {mpz_class("123456789012345678901234567890"), mpz_class(3), mpz_class(5),
                          mpz_class("-98765432109876543210")});
    CHECK(det(huge) == oracle::cofactor_det(huge));
}

TEST_CASE("duplicated row gives zero determinant") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + i % 5;
        IntMatrix m = random_matrix(rng, n, n, 5);
        std::vector<mpz_class> e(m.entries().begin(), m.entries().end());
        const std::size_t src = rng() % n;
        std::size_t dst = rng() % n;
        if (dst == src) dst = (dst + 1) % n;
        for (std::size_t c = 0; c < n; ++c) e[dst * n + c] = e[src * n + c];
        const IntMatrix dup(n, n, e);
        REQUIRE(det(dup) == 0);
        REQUIRE(is_singular(dup));
    }
}

TEST_CASE("rank fixtures and RREF oracle") {
    CHECK(rank(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(IntMatrix::identity(6)) == 6);
    CHECK(rank(IntMatrix(3, 4)) == 0);
    std::mt19937_64 rng(15);
    for (int i = 0; i < 500; ++i) {
        const IntMatrix m = random_matrix(rng, 4, 6, i % 3 == 0 ? 1 : 4);
        REQUIRE(rank(m) == oracle::rref_rank(m));
    }
}

TEST_CASE("is_singular agrees with det and rank on all 81 matrices n=2 m=1") {
    std::vector<std::int64_t> e(4, -1);
    std::size_t singular = 0;
    for (int code = 0; code < 81; ++code) {
        int c = code;
        for (auto& v : e) { v = c % 3 - 1; c /= 3; }
        const IntMatrix m = IntMatrix::from_small(2, 2, e);
        const bool oracle_singular = oracle::cofactor_det(m) == 0;
        REQUIRE(is_singular(m) == oracle_singular);
        REQUIRE(is_singular(std::span<const std::int64_t>(e), 2) == oracle_singular);
        REQUIRE((rank(m) < 2) == oracle_singular);
        singular += oracle_singular ? 1 : 0;
    }
    // ad = bc: products over {-1,0,1} are 0 (5 ways), 1 (2 ways), -1 (2 ways).
    CHECK(singular == 5 * 5 + 2 * 2 + 2 * 2);
}

TEST_CASE("kernel fixtures") {
    const auto k = kernel_basis(IntMatrix::from_rows({{1, 2}, {2, 4}}));
    REQUIRE(k.size() == 1);
    // (-2, 1) normalised so the first nonzero coordinate is positive.
    CHECK(k[0].entries[0] == 2);
    CHECK(k[0].entries[1] == -1);
    CHECK(kernel_basis(IntMatrix::identity(4)).empty());

    const auto z = kernel_basis(IntMatrix(1, 3));
    REQUIRE(z.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(z[i].entries[j] == (i == j ? 1 : 0));
}

TEST_CASE("kernel vectors are exact, canonical and complete") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 500; ++i) {
        const std::size_t rows = 1 + i % 5;
        const std::size_t cols = 1 + (i / 5) % 6;
        const IntMatrix m = random_matrix(rng, rows, cols, i % 2 == 0 ? 1 : 3);
        const auto basis = kernel_basis(m);
        REQUIRE(basis.size() + rank(m) == cols);
        for (const auto& v : basis) {
            REQUIRE(!v.is_zero());
            REQUIRE(multiply(m, v).is_zero());
            REQUIRE(oracle::is_zero_product(m, v.entries));
            mpz_class content = 0;
            bool first = true;
            for (const auto& q : v.entries) {
                REQUIRE(q.get_den() == 1);
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q.get_num().get_mpz_t());
                if (first && q != 0) {
                    REQUIRE(q > 0);
                    first = false;
                }
            }
            REQUIRE(content == 1);
        }
        // Basis vectors are independent: stacking them gives full row rank.
        if (!basis.empty()) {
            std::vector<mpz_class> e;
            for (const auto& v : basis)
                for (const auto& q : v.entries) e.push_back(q.get_num());
            REQUIRE(rank(IntMatrix(basis.size(), cols, e)) == basis.size());
        }
    }
}

TEST_CASE("random (n-1) x n full-rank matrix has a one-dimensional kernel") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + i % 6;
        const IntMatrix m = random_matrix(rng, n - 1, n, 10);
        if (rank(m) != n - 1) continue;
        const auto basis = kernel_basis(m);
        REQUIRE(basis.size() == 1);
        REQUIRE(multiply(m, basis[0]).is_zero());
    }
}

TEST_CASE("prime-field filter never contradicts the exact answer") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + i % 5;
        const IntMatrix m = random_matrix(rng, n, n, 1);
        if (detail::nonsingular_mod_primes(m)) REQUIRE(det(m) != 0);
    }
}

TEST_CASE("select_columns and transpose") {
    const IntMatrix m = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
    const std::vector<std::size_t> cols{2, 0};
    CHECK(m.select_columns(cols) == IntMatrix::from_rows({{3, 1}, {6, 4}}));
    CHECK(m.transpose() == IntMatrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
    CHECK_THROWS_AS(IntMatrix(0, 3), DimensionError);
}

}  // TEST_SUITE
