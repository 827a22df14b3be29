#include "intmat/vector_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "intmat/errors.hpp"
#include "intmat/rng.hpp"

namespace intmat {

namespace {

void require_unit(const RealVector& x, const char* op) {
    const double norm = x.norm().to_double();
    if (!(std::abs(norm * norm - 1.0) <= kUnitTolerance)) {
        throw DomainError(std::string(op) + ": expected a unit vector, norm is " + std::to_string(norm));
    }
}

Real sum_of_squares(const std::vector<Real>& values, mpfr_prec_t precision) {
    Real acc = Real::zero(precision);
    for (const auto& v : values) acc += v * v;
    return acc;
}

}  // namespace

RealVector::RealVector(std::vector<Real> entries, mpfr_prec_t precision) : precision_(precision) {
    if (precision < 64) throw DomainError("RealVector: precision must be >= 64 bits");
    if (entries.empty()) throw DomainError("RealVector: empty vector");
    entries_.reserve(entries.size());
    for (auto& e : entries) {
        if (!e.is_finite()) throw DomainError("RealVector: non-finite entry");
        entries_.push_back(e.precision() == precision ? std::move(e) : e.with_precision(precision));
    }
}

RealVector RealVector::from_doubles(std::span<const double> values, mpfr_prec_t precision) {
    std::vector<Real> entries;
    entries.reserve(values.size());
    for (double v : values) entries.emplace_back(v, precision);
    return RealVector(std::move(entries), precision);
}

Real RealVector::norm() const { return sqrt(sum_of_squares(entries_, precision_)); }

std::vector<double> RealVector::to_doubles() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.to_double());
    return out;
}

LcdParams LcdParams::defaults(std::int64_t m) {
    if (m < 1) throw DomainError("LcdParams::defaults: m must be >= 1");
    return LcdParams{1.0 / 50.0, 1.0 / std::sqrt(static_cast<double>(m))};
}

void LcdParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
}

std::size_t sparse_budget(double alpha, std::size_t n) {
    return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n) + 1e-9));
}

RealVector normalize(const RationalVector& v, mpfr_prec_t precision) {
    std::vector<Real> entries;
    entries.reserve(v.size());
    for (const auto& q : v.entries) entries.emplace_back(q, precision);
    return normalize(RealVector(std::move(entries), precision));
}

RealVector normalize(const RealVector& v) {
    const Real norm = v.norm();
    if (norm.is_zero()) throw DomainError("normalize: zero vector");
    std::vector<Real> entries;
    entries.reserve(v.size());
    for (const auto& e : v.entries()) entries.push_back(e / norm);
    return RealVector(std::move(entries), v.precision());
}

RealVector random_direction(std::size_t n, Seed seed, mpfr_prec_t precision) {
    if (n == 0) throw DomainError("random_direction: n must be >= 1");
    constexpr std::uint64_t kHalfWidth = 1u << 20;
    Pcg64 gen(seed);
    for (;;) {
        std::vector<Real> entries;
        entries.reserve(n);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<long>(gen.uniform_to(2 * kHalfWidth)) - static_cast<long>(kHalfWidth);
            nonzero = nonzero || v != 0;
            entries.emplace_back(v, precision);
        }
        if (nonzero) return normalize(RealVector(std::move(entries), precision));
    }
}

RealVector normal_vector(const IntMatrix& rows, std::int64_t dist_m, mpfr_prec_t precision) {
    if (dist_m < 1) throw DomainError("normal_vector: m must be >= 1");
    const auto basis = kernel_basis(rows);
    if (basis.empty()) throw DomainError("normal_vector: matrix has full column rank, kernel is trivial");
    return normalize(basis.front(), precision);
}

SparseDecomposition sparse_decomposition(const RealVector& x, std::size_t s) {
    const std::size_t n = x.size();
    if (s > n) throw DomainError("sparse_residual: s exceeds the dimension");
    std::vector<Real> magnitude;
    magnitude.reserve(n);
    for (const auto& e : x.entries()) magnitude.push_back(abs(e));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return magnitude[a] > magnitude[b]; });

    SparseDecomposition out{std::vector<std::size_t>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s)),
                            Real::zero(x.precision())};
    std::sort(out.sparse_indices.begin(), out.sparse_indices.end());
    // Sum the small entries smallest-first.
    Real acc = Real::zero(x.precision());
    for (std::size_t i = n; i > s; --i) acc += magnitude[order[i - 1]] * magnitude[order[i - 1]];
    out.residual = sqrt(acc);
    return out;
}

Real sparse_residual(const RealVector& x, std::size_t s) { return sparse_decomposition(x, s).residual; }

bool is_compressible(const RealVector& x, const LcdParams& params) {
    params.validate();
    require_unit(x, "is_compressible");
    return sparse_residual(x, sparse_budget(params.alpha, x.size())) <= Real(params.beta, x.precision());
}

Real fractional_part(const Real& y) { return y - round_half_up(y); }

namespace {

RealVector fractional_image(const RealVector& x, const Real& d) {
    std::vector<Real> frac;
    frac.reserve(x.size());
    for (const auto& e : x.entries()) frac.push_back(fractional_part(d * e));
    return RealVector(std::move(frac), x.precision());
}

Real witness_threshold(const RealVector& x, const Real& d, double beta) {
    const Real root_n = sqrt(Real(static_cast<long>(x.size()), x.precision()));
    return Real(beta, x.precision()) * (d < root_n ? d : root_n);
}

}  // namespace

bool lcd_witness(const RealVector& x, const Real& d, const LcdParams& params) {
    params.validate();
    if (!(d.sign() > 0)) throw DomainError("lcd_witness: D must be > 0");
    const std::size_t s = sparse_budget(params.alpha, x.size());
    return sparse_residual(fractional_image(x, d), s) <= witness_threshold(x, d, params.beta);
}

LcdScanResult lcd_scan(const RealVector& x, const LcdParams& params, const Real& d_max, const Real& grid_step) {
    params.validate();
    if (!(grid_step.sign() > 0) || grid_step > d_max) throw DomainError("lcd_scan: need 0 < step <= d_max");
    const mpfr_prec_t prec = x.precision();
    LcdScanResult result{std::nullopt, grid_step.with_precision(prec), d_max.with_precision(prec), std::nullopt, 0};
    const std::size_t s = sparse_budget(params.alpha, x.size());
    // Relative slack so that d_max itself is on the grid when it is a
    // multiple of the step up to the rounding of decimal inputs.
    const Real limit = result.d_max * Real(1.0 + 1e-12, prec);
    for (long j = 1;; ++j) {
        Real d = Real(j, prec) * result.grid_step;
        if (d > limit) break;
        ++result.grid_points_checked;
        SparseDecomposition decomposition = sparse_decomposition(fractional_image(x, d), s);
        if (decomposition.residual <= witness_threshold(x, d, params.beta)) {
            result.lcd_upper = std::move(d);
            result.certificate = std::move(decomposition);
            break;
        }
    }
    return result;
}

bool spread_check(const RealVector& x, double alpha, double gamma) {
    // Same decimal-rounding guard as sparse_budget: 0.1 * 10 counts as 1.
    const double alpha_n = alpha * static_cast<double>(x.size());
    if (!(alpha_n > 1.0 + 1e-9)) throw DomainError("spread_check: needs alpha * n > 1");
    const Real one(1L, x.precision());
    const Real threshold = one / sqrt(Real(alpha_n, x.precision()) - one);
    Real sum_sq = Real::zero(x.precision());
    Real max_sq = Real::zero(x.precision());
    for (const auto& e : x.entries()) {
        if (abs(e) <= threshold) {
            const Real sq = e * e;
            sum_sq += sq;
            if (sq > max_sq) max_sq = sq;
        }
    }
    const Real g(gamma, x.precision());
    return sum_sq >= max_sq + g * g;
}

double spectral_norm(const IntMatrix& r, std::int64_t scale_m) {
    if (scale_m < 1) throw DomainError("spectral_norm: m must be >= 1");
    const std::size_t rows = r.rows();
    const std::size_t cols = r.cols();
    const double inv_m = 1.0 / static_cast<double>(scale_m);
    std::vector<double> a(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) a[i] = r.entries()[i].get_d() * inv_m;

    // Fixed positive start vector: not orthogonal to the Perron vector of a
    // non-negative matrix and generic otherwise.
    Pcg64 gen(Seed{0x5EEDULL, 0});
    std::vector<double> v(cols);
    for (auto& e : v) e = 0.5 + gen.uniform01();
    std::vector<double> av(rows);
    std::vector<double> atav(cols);

    auto apply = [&] {
        for (std::size_t i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols; ++j) acc += a[i * cols + j] * v[j];
            av[i] = acc;
        }
        double sq = 0.0;
        for (double e : av) sq += e * e;
        return std::sqrt(sq);
    };
    auto normalise_v = [&] {
        double sq = 0.0;
        for (double e : v) sq += e * e;
        const double norm = std::sqrt(sq);
        if (norm == 0.0) return false;
        for (double& e : v) e /= norm;
        return true;
    };

    normalise_v();
    double sigma = apply();
    for (int iter = 0; iter < 10000 && sigma > 0.0; ++iter) {
        for (std::size_t j = 0; j < cols; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < rows; ++i) acc += a[i * cols + j] * av[i];
            atav[j] = acc;
        }
        v = atav;
        if (!normalise_v()) break;
        const double next = apply();
        const bool converged = std::abs(next - sigma) < 1e-10 * next;
        sigma = next;
        if (converged) break;
    }
    return sigma;
}

}  // namespace intmat
