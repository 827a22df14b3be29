#pragma once

// Extended-precision real numbers backed by MPFR.
//
// Every value carries its own mantissa width. Binary operations round to the
// wider of the two operands, so a computation started at 128 bits stays at
// 128 bits without any global precision state.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace intmat {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

class Real {
public:
    Real() : Real(0.0, kDefaultPrecision) {}
    Real(double value, mpfr_prec_t precision = kDefaultPrecision);
    Real(long value, mpfr_prec_t precision = kDefaultPrecision);
    Real(int value, mpfr_prec_t precision = kDefaultPrecision) : Real(static_cast<long>(value), precision) {}
    Real(const mpz_class& value, mpfr_prec_t precision = kDefaultPrecision);
    Real(const mpq_class& value, mpfr_prec_t precision = kDefaultPrecision);

    static Real zero(mpfr_prec_t precision);

    // Parses a decimal literal ("0.25", "-1e-3"). Throws ParseError.
    static Real from_string(const std::string& text, mpfr_prec_t precision = kDefaultPrecision);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
    // Rounds to a new mantissa width.
    Real with_precision(mpfr_prec_t precision) const;

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // Shortest-ish decimal rendering with `digits` significant digits.
    std::string to_string(int digits = 40) const;

    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    Real operator-() const;

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

    friend Real abs(const Real& x);
    friend Real sqrt(const Real& x);
    // floor(x + 1/2): round half up.
    friend Real round_half_up(const Real& x);
    friend Real floor(const Real& x);

    const __mpfr_struct* raw() const noexcept { return value_; }
    __mpfr_struct* raw() noexcept { return value_; }

private:
    mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace intmat
