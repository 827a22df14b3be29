#pragma once

// Exact integer / rational linear algebra.
//
// Everything here is exact: determinants come from fraction-free (Bareiss)
// elimination with exact division, and the kernel is computed by fraction-free
// Gauss-Jordan elimination. A word-size fast path is taken only when the
// Hadamard bound proves every intermediate fits in a signed 128-bit integer.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace intmat {

// Dense row-major matrix of arbitrary-precision signed integers.
class IntMatrix {
public:
    // Zero matrix. Throws DimensionError when rows or cols is zero.
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

    // Convenience for fixtures: IntMatrix::from_rows({{1, 2}, {3, 4}}).
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix from_small(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const mpz_class> entries() const noexcept { return entries_; }

    // Submatrix made of the given columns, in the given order.
    IntMatrix select_columns(std::span<const std::size_t> columns) const;
    IntMatrix transpose() const;

    // Entries as int64 when every entry fits; empty otherwise.
    std::vector<std::int64_t> to_small() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<mpz_class> entries_;
};

// Exact rational vector, every entry in lowest terms.
struct RationalVector {
    std::vector<mpq_class> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool is_zero() const;
    friend bool operator==(const RationalVector&, const RationalVector&) = default;
};

mpz_class det(const IntMatrix& m);
// Square n x n matrix given as row-major int64 entries.
mpz_class det(std::span<const std::int64_t> entries, std::size_t n);

std::size_t rank(const IntMatrix& m);

bool is_singular(const IntMatrix& m);
bool is_singular(std::span<const std::int64_t> entries, std::size_t n);

// Basis of the right kernel over Q, one vector per non-pivot column in
// increasing column order. Each vector is integer-valued, content-reduced
// and has a positive first nonzero coordinate.
std::vector<RationalVector> kernel_basis(const IntMatrix& m);

// M * v, exactly.
RationalVector multiply(const IntMatrix& m, const RationalVector& v);

namespace detail {

// Hadamard-style bound: log2 of prod_i max(1, ||row_i||_2). Every minor of
// the matrix is at most 2^result in absolute value.
double log2_minor_bound(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols);

// True when det(M) mod p != 0 for at least one of the built-in ~61-bit
// primes, which proves det(M) != 0. False means "probably singular" and must
// be confirmed exactly.
bool nonsingular_mod_primes(std::span<const std::int64_t> entries, std::size_t n, std::size_t prime_count = 2);
bool nonsingular_mod_primes(const IntMatrix& m, std::size_t prime_count = 2);

}  // namespace detail

}  // namespace intmat
