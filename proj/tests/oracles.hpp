#pragma once

// Independent reference implementations. Nothing here calls into the library
// code under test beyond plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <gmpxx.h>

#include "intmat/exact_linalg.hpp"

namespace oracle {

using Grid = std::vector<std::vector<mpz_class>>;

inline Grid to_grid(const intmat::IntMatrix& m) {
    Grid g(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m(r, c);
    return g;
}

// Laplace expansion along the first row.
inline mpz_class cofactor_det(const Grid& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    mpz_class total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Grid minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        const mpz_class term = a[0][j] * cofactor_det(minor);
        if (j % 2 == 0) total += term; else total -= term;
    }
    return total;
}

inline mpz_class cofactor_det(const intmat::IntMatrix& m) { return cofactor_det(to_grid(m)); }

// Reduced row echelon form over Q.
struct Rref {
    std::vector<std::vector<mpq_class>> rows;
    std::vector<std::size_t> pivots;
};

inline Rref rref(const intmat::IntMatrix& m) {
    Rref out;
    out.rows.assign(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.rows[r][c] = m(r, c);
    auto& a = out.rows;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && a[p][c] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(a[p], a[lead]);
        const mpq_class inv = 1 / a[lead][c];
        for (auto& v : a[lead]) v *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || a[r][c] == 0) continue;
            const mpq_class f = a[r][c];
            for (std::size_t k = 0; k < m.cols(); ++k) a[r][k] -= f * a[lead][k];
        }
        out.pivots.push_back(c);
        ++lead;
    }
    return out;
}

inline std::size_t rref_rank(const intmat::IntMatrix& m) { return rref(m).pivots.size(); }

inline bool is_zero_product(const intmat::IntMatrix& m, const std::vector<mpq_class>& v) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
        if (acc != 0) return false;
    }
    return true;
}

// Minimum over every s-subset of removed coordinates of the norm of the rest.
inline double exhaustive_sparse_residual(const std::vector<double>& x, std::size_t s) {
    const std::size_t n = x.size();
    double best = INFINITY;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != s) continue;
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!(mask >> i & 1u)) sq += x[i] * x[i];
        best = std::min(best, std::sqrt(sq));
    }
    return best;
}

// |E exp(i t <X/m, x>)| with X uniform on {-m..m}^n, by summing over the support.
inline double support_sum_modulus(const std::vector<double>& x, double t, std::int64_t m) {
    const std::size_t n = x.size();
    std::vector<std::int64_t> xs(n, -m);
    std::complex<double> acc = 0.0;
    std::size_t count = 0;
    for (;;) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += static_cast<double>(xs[i]) * x[i];
        acc += std::polar(1.0, t * dot / static_cast<double>(m));
        ++count;
        std::size_t pos = n;
        while (pos > 0 && xs[pos - 1] == m) xs[--pos] = -m;
        if (pos == 0) break;
        ++xs[pos - 1];
    }
    return std::abs(acc) / static_cast<double>(count);
}

// Composite midpoint rule.
template <typename Fn>
double midpoint(Fn&& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t i = 0; i < panels; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h);
    return acc * h;
}

// Largest singular value of [[a, b], [c, d]] from the characteristic
// polynomial of R^T R.
inline double top_singular_2x2(double a, double b, double c, double d) {
    const double p = a * a + b * b + c * c + d * d;
    const double q = a * d - b * c;
    return std::sqrt((p + std::sqrt(p * p - 4.0 * q * q)) / 2.0);
}

}  // namespace oracle
