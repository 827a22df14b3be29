#pragma once

// Characteristic function of Y = <X/m, x> for X uniform on {-m..m}^n, the
// per-coordinate factor F, its envelope G, Esseen-style integrals and a Monte
// Carlo small-ball probe.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "intmat/monte_carlo.hpp"
#include "intmat/rng.hpp"
#include "intmat/vector_geometry.hpp"

namespace intmat {

// Constants derived by derive_c2() / derive_eta() over m in {1..64} with
// 10^4-point grids per m; frozen here and re-derived by the test suite.
inline constexpr double kGaussianC2 = 0.8;
inline constexpr double kDefaultEta = 0.8;

// |sin((2m+1) pi y) / ((2m+1) sin(pi y))|, with value 1 where
// |sin(pi y)| < 2^-40.
double F_eval(double y, std::int64_t m);

// exp(-eta y^2) on [0, 1], exp(-eta) / y beyond. Throws DomainError for y < 0.
double G_eval(double y, double eta);

// prod_k F(x_k t / (2 pi m)).
double charfn_modulus(std::span<const double> x, double t, std::int64_t m);
double charfn_modulus(const RealVector& x, double t, std::int64_t m);

// eps * integral_{-1/eps}^{1/eps} |phi_Y(t)| dt by adaptive Simpson, with
// panels split at the zeros of the fastest-oscillating factor. No constant
// is applied.
double esseen_integral(std::span<const double> x, std::int64_t m, double epsilon, double rel_tol = 1e-6);
double esseen_integral(const RealVector& x, std::int64_t m, double epsilon, double rel_tol = 1e-6);

// sqrt(log2 m) / m.
double epsilon_zero(std::int64_t m);

struct SmallBallReport {
    double epsilon = 0.0;
    EstimateReport mc;
    double esseen_integral = 0.0;
    // eps / gamma + (alpha beta m)^-(alpha n) with gamma = sqrt(beta), when
    // LCD parameters are supplied.
    std::optional<double> lcd_bound;
};

// Monte Carlo estimate of Pr[|<X/m, x>| <= eps].
SmallBallReport small_ball_probe(const RealVector& x, std::int64_t m, double epsilon, std::uint64_t trials, Seed seed,
                                 unsigned threads = 1, std::optional<LcdParams> lcd = std::nullopt);

// min over m <= max_m and y in (0, min(1/m, 1/2)] of (1 - F(y, m)) / (m y)^2,
// floored to three significant digits.
double derive_c2(std::int64_t max_m = 64, std::size_t grid = 10000);

// Largest eta <= min(ln pi, c2), on a 10^-4 relative step, with
// F(y, m) <= G(m y, eta) on the grid over [0, 1/2] for every m <= max_m.
double derive_eta(double c2, std::int64_t max_m = 64, std::size_t grid = 10000);

}  // namespace intmat
