#include "intmat/real.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "intmat/errors.hpp"

namespace intmat {

namespace {

// Widen the destination in place so an in-place op rounds to the wider width.
void widen(Real& dst, mpfr_prec_t precision) {
    if (dst.precision() < precision) mpfr_prec_round(dst.raw(), precision, MPFR_RNDN);
}

}  // namespace

Real Real::zero(mpfr_prec_t precision) { return Real(0L, precision); }

Real::Real(double value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_string(const std::string& text, mpfr_prec_t precision) {
    Real out = Real::zero(precision);
    if (text.empty()) throw ParseError("empty real literal");
    char* end = nullptr;
    mpfr_strtofr(out.value_, text.c_str(), &end, 10, MPFR_RNDN);
    if (end == text.c_str() || *end != '\0') throw ParseError("not a decimal real: '" + text + "'");
    if (!out.is_finite()) throw ParseError("non-finite real: '" + text + "'");
    return out;
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // Leave `other` as a valid minimal-width zero.
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(mpfr_prec_t precision) const {
    Real out = Real::zero(precision);
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
}

std::string Real::to_string(int digits) const {
    if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return buf.data();
}

Real& Real::operator+=(const Real& rhs) {
    widen(*this, rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    widen(*this, rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    widen(*this, rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    widen(*this, rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real out = Real::zero(precision());
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

Real abs(const Real& x) {
    Real out = Real::zero(x.precision());
    mpfr_abs(out.value_, x.value_, MPFR_RNDN);
    return out;
}

Real sqrt(const Real& x) {
    Real out = Real::zero(x.precision());
    mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
    return out;
}

Real floor(const Real& x) {
    Real out = Real::zero(x.precision());
    mpfr_floor(out.value_, x.value_);
    return out;
}

Real round_half_up(const Real& x) {
    // floor(x + 1/2) evaluated without the rounding of x + 1/2: take the
    // exact fractional part x - floor(x) and compare it with one half.
    Real base = floor(x);
    Real frac = Real::zero(x.precision());
    mpfr_sub(frac.value_, x.value_, base.value_, MPFR_RNDN);
    if (mpfr_cmp_d(frac.value_, 0.5) >= 0) mpfr_add_ui(base.value_, base.value_, 1, MPFR_RNDN);
    return base;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

}  // namespace intmat
