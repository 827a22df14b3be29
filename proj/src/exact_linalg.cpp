#include "intmat/exact_linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "intmat/errors.hpp"

namespace intmat {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// 2 * H^2 < 2^127 with some slack for the floating-point bound itself.
constexpr double kInt128Log2Budget = 62.0;

constexpr std::array<std::uint64_t, 3> kPrimes = {
    2305843009213693951ULL,  // 2^61 - 1
    2305843009213693921ULL,
    1152921504606846883ULL,
};

void require_square(std::size_t rows, std::size_t cols, const char* op) {
    if (rows != cols) {
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
}

// Fraction-free elimination on a square row-major buffer. Returns det.
template <typename T>
T bareiss_det(std::vector<T>& a, std::size_t n) {
    T prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot * n + k] == 0) ++pivot;
        if (pivot == n) return T(0);
        if (pivot != k) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n),
                             a.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                             a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
            negate = !negate;
        }
        const T pkk = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const T aik = a[i * n + k];
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (pkk * a[i * n + j] - aik * a[k * n + j]) / prev;
            }
        }
        prev = pkk;
    }
    return negate ? T(-a[n * n - 1]) : a[n * n - 1];
}

// The mpz specialisation avoids temporaries and uses exact division.
mpz_class bareiss_det_mpz(std::vector<mpz_class>& a, std::size_t n) {
    mpz_class prev = 1;
    mpz_class tmp;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(a[pivot * n + k]) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) swap(a[k * n + j], a[pivot * n + j]);
            negate = !negate;
        }
        const mpz_class& pkk = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpz_class& aik = a[i * n + k];
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(tmp.get_mpz_t(), pkk.get_mpz_t(), a[i * n + j].get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), aik.get_mpz_t(), a[k * n + j].get_mpz_t());
                mpz_divexact(a[i * n + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = pkk;
    }
    return negate ? mpz_class(-a[n * n - 1]) : a[n * n - 1];
}

mpz_class from_i128(i128 v) {
    const bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    mpz_class out = static_cast<unsigned long>(u >> 64);
    out <<= 64;
    out += static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
    return neg ? mpz_class(-out) : out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return result;
}

bool nonzero_det_mod(std::vector<std::uint64_t>& a, std::size_t n, std::uint64_t p) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot * n + k] == 0) ++pivot;
        if (pivot == n) return false;
        if (pivot != k) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n),
                             a.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                             a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
        }
        const std::uint64_t inv = powmod(a[k * n + k], p - 2, p);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint64_t f = mulmod(a[i * n + k], inv, p);
            if (f == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                const std::uint64_t sub = mulmod(f, a[k * n + j], p);
                const std::uint64_t x = a[i * n + j];
                a[i * n + j] = x >= sub ? x - sub : x + (p - sub);
            }
        }
    }
    return true;
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t reduce_mod(const mpz_class& v, std::uint64_t p) {
    return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : IntMatrix(rows, cols, std::vector<mpz_class>(rows * cols)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("IntMatrix: rows and cols must be >= 1");
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("IntMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                             std::to_string(entries_.size()));
    }
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<mpz_class> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("IntMatrix::from_rows: ragged rows");
        for (long v : row) entries.emplace_back(v);
    }
    return IntMatrix(r, c, std::move(entries));
}

IntMatrix IntMatrix::from_small(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries) {
    std::vector<mpz_class> big;
    big.reserve(entries.size());
    for (std::int64_t v : entries) big.emplace_back(static_cast<long>(v));
    return IntMatrix(rows, cols, std::move(big));
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> columns) const {
    if (columns.empty()) throw DimensionError("select_columns: empty column set");
    IntMatrix out(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j] >= cols_) throw DimensionError("select_columns: column index out of range");
            out(r, j) = (*this)(r, columns[j]);
        }
    }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

std::vector<std::int64_t> IntMatrix::to_small() const {
    std::vector<std::int64_t> out;
    out.reserve(entries_.size());
    for (const auto& v : entries_) {
        if (!v.fits_slong_p()) return {};
        out.push_back(v.get_si());
    }
    return out;
}

bool RationalVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

namespace detail {

double log2_minor_bound(std::span<const std::int64_t> entries, std::size_t rows, std::size_t cols) {
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        long double sq = 0.0L;
        for (std::size_t c = 0; c < cols; ++c) {
            const long double v = static_cast<long double>(entries[r * cols + c]);
            sq += v * v;
        }
        if (sq > 1.0L) total += 0.5 * std::log2(static_cast<double>(sq));
    }
    return total;
}

bool nonsingular_mod_primes(std::span<const std::int64_t> entries, std::size_t n, std::size_t prime_count) {
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t i = 0; i < std::min(prime_count, kPrimes.size()); ++i) {
        const std::uint64_t p = kPrimes[i];
        for (std::size_t k = 0; k < n * n; ++k) a[k] = reduce_mod(entries[k], p);
        if (nonzero_det_mod(a, n, p)) return true;
    }
    return false;
}

bool nonsingular_mod_primes(const IntMatrix& m, std::size_t prime_count) {
    require_square(m.rows(), m.cols(), "nonsingular_mod_primes");
    const std::size_t n = m.rows();
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t i = 0; i < std::min(prime_count, kPrimes.size()); ++i) {
        const std::uint64_t p = kPrimes[i];
        for (std::size_t k = 0; k < n * n; ++k) a[k] = reduce_mod(m.entries()[k], p);
        if (nonzero_det_mod(a, n, p)) return true;
    }
    return false;
}

}  // namespace detail

mpz_class det(std::span<const std::int64_t> entries, std::size_t n) {
    if (entries.size() != n * n) throw DimensionError("det: expected " + std::to_string(n * n) + " entries");
    if (n == 0) throw DimensionError("det: empty matrix");
    if (detail::log2_minor_bound(entries, n, n) < kInt128Log2Budget) {
        std::vector<i128> a(entries.begin(), entries.end());
        return from_i128(bareiss_det(a, n));
    }
    std::vector<mpz_class> a;
    a.reserve(entries.size());
    for (std::int64_t v : entries) a.emplace_back(static_cast<long>(v));
    return bareiss_det_mpz(a, n);
}

mpz_class det(const IntMatrix& m) {
    require_square(m.rows(), m.cols(), "det");
    if (const auto small = m.to_small(); !small.empty()) return det(small, m.rows());
    std::vector<mpz_class> a(m.entries().begin(), m.entries().end());
    return bareiss_det_mpz(a, m.rows());
}

bool is_singular(std::span<const std::int64_t> entries, std::size_t n) {
    if (entries.size() != n * n) throw DimensionError("is_singular: expected " + std::to_string(n * n) + " entries");
    if (detail::log2_minor_bound(entries, n, n) < kInt128Log2Budget) {
        std::vector<i128> a(entries.begin(), entries.end());
        return bareiss_det(a, n) == 0;
    }
    if (detail::nonsingular_mod_primes(entries, n)) return false;
    return sgn(det(entries, n)) == 0;
}

bool is_singular(const IntMatrix& m) {
    require_square(m.rows(), m.cols(), "is_singular");
    if (const auto small = m.to_small(); !small.empty()) return is_singular(small, m.rows());
    if (detail::nonsingular_mod_primes(m)) return false;
    return sgn(det(m)) == 0;
}

std::size_t rank(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<mpz_class> a(m.entries().begin(), m.entries().end());
    mpz_class prev = 1;
    mpz_class tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a[pivot * cols + c]) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) swap(a[r * cols + j], a[pivot * cols + j]);
        const mpz_class& prc = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class aic = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_mul(tmp.get_mpz_t(), prc.get_mpz_t(), a[i * cols + j].get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), aic.get_mpz_t(), a[r * cols + j].get_mpz_t());
                mpz_divexact(a[i * cols + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * cols + c] = 0;
        }
        prev = prc;
        ++r;
    }
    return r;
}

std::vector<RationalVector> kernel_basis(const IntMatrix& m) {
    // Fraction-free Gauss-Jordan: after processing pivot t every pivot entry
    // equals the current pivot d and the matrix is d times the partial RREF.
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<mpz_class> a(m.entries().begin(), m.entries().end());
    std::vector<std::size_t> pivot_cols;
    mpz_class prev = 1;
    mpz_class tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a[pivot * cols + c]) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) swap(a[r * cols + j], a[pivot * cols + j]);
        const mpz_class prc = a[r * cols + c];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const mpz_class aic = a[i * cols + c];
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == c) continue;
                mpz_mul(tmp.get_mpz_t(), prc.get_mpz_t(), a[i * cols + j].get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), aic.get_mpz_t(), a[r * cols + j].get_mpz_t());
                mpz_divexact(a[i * cols + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * cols + c] = 0;
        }
        prev = prc;
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<RationalVector> basis;
    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        std::vector<mpz_class> v(cols);
        v[f] = prev;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i * cols + f];

        mpz_class content = 0;
        for (const auto& x : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
        const auto lead = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
        if (sgn(*lead) < 0) content = -content;

        RationalVector out;
        out.entries.reserve(cols);
        for (const auto& x : v) {
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
            out.entries.emplace_back(q);
        }
        basis.push_back(std::move(out));
    }
    return basis;
}

RationalVector multiply(const IntMatrix& m, const RationalVector& v) {
    if (v.size() != m.cols()) throw DimensionError("multiply: vector length does not match matrix columns");
    RationalVector out;
    out.entries.assign(m.rows(), mpq_class(0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += mpq_class(m(r, c)) * v.entries[c];
        acc.canonicalize();
        out.entries[r] = acc;
    }
    return out;
}

}  // namespace intmat
