#pragma once

// Real-vector diagnostics: sparse residuals and compressibility, the
// least-common-denominator (LCD) witness and grid scan, random normal
// vectors, the spread test, and spectral norms.
//
// All vector arithmetic runs in MPFR at the vector's precision (128 bits by
// default). Fractional parts of D*x amplify rounding by a factor D, which is
// what the extra mantissa buys back.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "intmat/exact_linalg.hpp"
#include "intmat/real.hpp"
#include "intmat/rng.hpp"

namespace intmat {

inline constexpr double kUnitTolerance = 1e-9;

class RealVector {
public:
    // Throws DomainError on non-finite entries or precision < 64.
    explicit RealVector(std::vector<Real> entries, mpfr_prec_t precision = kDefaultPrecision);
    static RealVector from_doubles(std::span<const double> values, mpfr_prec_t precision = kDefaultPrecision);

    std::size_t size() const noexcept { return entries_.size(); }
    mpfr_prec_t precision() const noexcept { return precision_; }
    const Real& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Real>& entries() const noexcept { return entries_; }

    Real norm() const;
    std::vector<double> to_doubles() const;

private:
    std::vector<Real> entries_;
    mpfr_prec_t precision_;
};

struct LcdParams {
    double alpha = 1.0 / 50.0;
    double beta = 0.5;

    // alpha = 1/50, beta = 1/sqrt(m).
    static LcdParams defaults(std::int64_t m);
    // Throws DomainError unless both lie in (0, 1).
    void validate() const;
};

// floor(alpha * n), guarded against binary rounding of decimal alphas.
std::size_t sparse_budget(double alpha, std::size_t n);

RealVector normalize(const RationalVector& v, mpfr_prec_t precision = kDefaultPrecision);
RealVector normalize(const RealVector& v);

// Normalised vector of i.i.d. integers uniform on [-2^20, 2^20].
RealVector random_direction(std::size_t n, Seed seed, mpfr_prec_t precision = kDefaultPrecision);

// Unit vector spanning the first canonical kernel_basis vector of `rows`.
// Scaling the rows by 1/m leaves the kernel unchanged, so `dist_m` is only
// validated. Throws DomainError when the kernel is trivial.
RealVector normal_vector(const IntMatrix& rows, std::int64_t dist_m, mpfr_prec_t precision = kDefaultPrecision);

struct SparseDecomposition {
    std::vector<std::size_t> sparse_indices;  // the s largest |x_i|, ties to lower index
    Real residual;                            // l2 norm of the remaining entries
};

SparseDecomposition sparse_decomposition(const RealVector& x, std::size_t s);
// min ||v||_2 over x = u + v with u s-sparse.
Real sparse_residual(const RealVector& x, std::size_t s);

// sparse_residual(x, floor(alpha n)) <= beta. Throws DomainError when x is
// not a unit vector.
bool is_compressible(const RealVector& x, const LcdParams& params);

// y - floor(y + 1/2), in [-1/2, 1/2).
Real fractional_part(const Real& y);

// {D x} = u + v with u floor(alpha n)-sparse and ||v|| <= beta * min(D, sqrt n).
bool lcd_witness(const RealVector& x, const Real& d, const LcdParams& params);

struct LcdScanResult {
    // Least grid D passing lcd_witness; empty means LCD > d_max at this
    // resolution.
    std::optional<Real> lcd_upper;
    Real grid_step;
    Real d_max;
    std::optional<SparseDecomposition> certificate;  // decomposition of {lcd_upper x}
    std::uint64_t grid_points_checked = 0;
};

// Scans D over {step, 2 step, ..., <= d_max}. Needs 0 < step <= d_max.
LcdScanResult lcd_scan(const RealVector& x, const LcdParams& params, const Real& d_max, const Real& grid_step);

// With J = {i : |x_i| <= 1/sqrt(alpha n - 1)}, whether
// ||x_J||_2^2 >= ||x_J||_inf^2 + gamma^2. Needs alpha n > 1.
bool spread_check(const RealVector& x, double alpha, double gamma);

// ||R / scale_m|| by power iteration on (R/m)^T (R/m); stops when the
// relative change drops below 1e-10 or after 10^4 iterations. The returned
// value is ||A v|| for a unit v, so it never exceeds the true norm.
double spectral_norm(const IntMatrix& r, std::int64_t scale_m);

}  // namespace intmat
