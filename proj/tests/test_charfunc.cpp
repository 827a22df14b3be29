#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "intmat/charfunc.hpp"
#include "intmat/errors.hpp"
#include "intmat/vector_geometry.hpp"
#include "oracles.hpp"

using namespace intmat;

namespace {

constexpr double kPi = std::numbers::pi;

// Directions with small rational coordinates, normalised.
std::vector<std::vector<double>> rational_directions(std::size_t n) {
    std::vector<std::vector<double>> out;
    const std::vector<std::vector<double>> raw{{1, 0, 0}, {1, 1, 0}, {1, 2, 2}, {3, -4, 0}, {2, 3, 6}, {1, -1, 1}, {5, 1, 3}};
    for (const auto& r : raw) {
        std::vector<double> x(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
        double sq = 0.0;
        for (double v : x) sq += v * v;
        if (sq == 0.0) continue;
        for (double& v : x) v /= std::sqrt(sq);
        out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_SUITE("charfunc") {

TEST_CASE("F fixtures") {
    for (std::int64_t m = 1; m <= 10; ++m) CHECK(F_eval(0.0, m) == 1.0);
    CHECK(F_eval(0.5, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(F_eval(3.0, 4) == 1.0);
    CHECK(F_eval(-2.0, 4) == 1.0);
    CHECK_THROWS_AS(F_eval(0.1, 0), DomainError);
}

TEST_CASE("F grid properties for m = 1..64") {
    std::size_t violations = 0;
    for (std::int64_t m = 1; m <= 64; ++m) {
        const double md = static_cast<double>(m);
        for (int i = 0; i <= 10000; ++i) {
            const double y = -2.0 + 4.0 * i / 10000.0;
            const double f = F_eval(y, m);
            if (!(f >= 0.0 && f <= 1.0)) ++violations;
            if (std::abs(f - F_eval(-y, m)) > 1e-12) ++violations;
            if (std::abs(f - F_eval(y + 1.0, m)) > 1e-9) ++violations;
        }
        // F(y) <= 1 / (pi m y) on [1/m, 1/2].
        if (m >= 2) {
            for (int i = 0; i <= 10000; ++i) {
                const double y = 1.0 / md + (0.5 - 1.0 / md) * i / 10000.0;
                if (F_eval(y, m) > 1.0 / (kPi * md * y) + 1e-12) ++violations;
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("Gaussian-regime constant") {
    CHECK(derive_c2() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(kGaussianC2 == 0.8);
    // The minimum sits at m = 2, y = 1/2 where F = 1/5: (1 - 1/5) / 1 = 0.8.
    CHECK(F_eval(0.5, 2) == doctest::Approx(0.2).epsilon(1e-14));
    std::size_t violations = 0;
    for (std::int64_t m = 1; m <= 64; ++m) {
        const double md = static_cast<double>(m);
        const double hi = std::min(1.0 / md, 0.5);
        for (int i = 0; i <= 10000; ++i) {
            const double y = hi * i / 10000.0;
            if (F_eval(y, m) > std::exp(-kGaussianC2 * md * md * y * y) + 1e-12) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("envelope constant") {
    CHECK(derive_eta(kGaussianC2) == doctest::Approx(kDefaultEta).epsilon(1e-12));
    std::size_t violations = 0;
    for (std::int64_t m = 1; m <= 64; ++m)
        for (int i = 0; i <= 10000; ++i) {
            const double y = 0.5 * i / 10000.0;
            if (F_eval(y, m) > G_eval(static_cast<double>(m) * y, kDefaultEta)) ++violations;
        }
    CHECK(violations == 0);
}

TEST_CASE("G fixtures and monotonicity") {
    const double eta = kDefaultEta;
    CHECK(G_eval(0.0, eta) == 1.0);
    CHECK(G_eval(1.0, eta) == doctest::Approx(std::exp(-eta)));
    CHECK(G_eval(std::nextafter(1.0, 2.0), eta) == doctest::Approx(std::exp(-eta)));
    CHECK_THROWS_AS(G_eval(-0.1, eta), DomainError);
    double prev = G_eval(0.0, eta);
    for (int i = 1; i <= 100000; ++i) {
        const double g = G_eval(10.0 * i / 100000.0, eta);
        REQUIRE(g <= prev);
        REQUIRE(g > 0.0);
        prev = g;
    }
}

TEST_CASE("charfn_modulus fixtures") {
    const std::vector<double> e1{1.0};
    CHECK(charfn_modulus(e1, 0.0, 3) == 1.0);
    for (int i = 0; i <= 2000; ++i) {
        const double t = -20.0 + 40.0 * i / 2000.0;
        REQUIRE(charfn_modulus(e1, t, 1) == doctest::Approx(std::abs(1.0 + 2.0 * std::cos(t)) / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("charfn_modulus matches support summation for n <= 3, m <= 3") {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::int64_t m = 1; m <= 3; ++m)
            for (const auto& x : rational_directions(n))
                for (int i = 0; i <= 60; ++i) {
                    const double t = -30.0 + i;
                    worst = std::max(worst, std::abs(charfn_modulus(x, t, m) - oracle::support_sum_modulus(x, t, m)));
                }
    CHECK(worst <= 1e-12);
}

TEST_CASE("Esseen integral") {
    const std::vector<double> e1{1.0};
    const double got = esseen_integral(e1, 1, 0.1);
    const double ref = 0.1 * oracle::midpoint([](double t) { return std::abs(1.0 + 2.0 * std::cos(t)) / 3.0; },
                                              -10.0, 10.0, 2000000);
    CHECK(got == doctest::Approx(ref).epsilon(1e-6));
    CHECK(got <= 2.0);

    // Before the eps prefactor the integral can only grow with the cutoff 1/eps.
    const auto x = rational_directions(3)[4];
    double prev = 0.0;
    for (double eps : {1.0, 0.5, 0.25, 0.1, 0.05}) {
        const double raw = esseen_integral(x, 2, eps) / eps;
        CHECK(raw >= prev * (1.0 - 1e-6));
        CHECK(raw * eps <= 2.0 + 1e-9);
        prev = raw;
    }
    CHECK_THROWS_AS(esseen_integral(e1, 1, 0.0), DomainError);
}

TEST_CASE("Esseen integral on a longer direction against a fixed grid") {
    const RealVector x = random_direction(12, Seed{3, 3});
    const auto xs = x.to_doubles();
    const double eps = 0.2;
    const double ref = 2.0 * eps * oracle::midpoint([&](double t) { return charfn_modulus(xs, t, 4); }, 0.0, 1.0 / eps, 400000);
    CHECK(esseen_integral(x, 4, eps) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("epsilon zero") {
    CHECK(epsilon_zero(16) == doctest::Approx(0.125));
    CHECK(epsilon_zero(1) == 0.0);
    CHECK(epsilon_zero(4) == doctest::Approx(std::sqrt(2.0) / 4.0));
}

TEST_CASE("small ball probe fixtures") {
    const RealVector e1 = RealVector::from_doubles(std::vector<double>{1.0, 0.0});
    const auto single = small_ball_probe(e1, 1, 0.5, 100000, Seed{4, 0});
    CHECK(wilson_interval(single.mc.hits, single.mc.trials, 0.999).low <= 1.0 / 3.0);
    CHECK(wilson_interval(single.mc.hits, single.mc.trials, 0.999).high >= 1.0 / 3.0);

    const RealVector x = random_direction(9, Seed{5, 0});
    const auto wide = small_ball_probe(x, 3, 3.0, 5000, Seed{6, 0});
    CHECK(wide.mc.hits == wide.mc.trials);
    CHECK_FALSE(wide.lcd_bound.has_value());

    const auto with_lcd = small_ball_probe(x, 16, 0.25, 1000, Seed{6, 0}, 1, LcdParams{0.25, 0.5});
    REQUIRE(with_lcd.lcd_bound.has_value());
    // eps / sqrt(beta) + (alpha beta m)^(-alpha n) = 0.25 / sqrt(0.5) + 2^(-2.25).
    CHECK(*with_lcd.lcd_bound == doctest::Approx(0.25 / std::sqrt(0.5) + std::pow(2.0, -2.25)));

    const auto t1 = small_ball_probe(x, 16, 0.05, 40000, Seed{8, 1}, 1);
    const auto t4 = small_ball_probe(x, 16, 0.05, 40000, Seed{8, 1}, 4);
    CHECK(t1.mc.hits == t4.mc.hits);
    CHECK_THROWS_AS(small_ball_probe(x, 16, 0.0, 10, Seed{}), DomainError);
}

TEST_CASE("Esseen consistency: frozen ratio of probability to integral") {
    // Pilot over these exact triples gave max mc / integral = 0.3262.
    constexpr double kEsseenRatio = 0.33;
    double worst = 0.0;
    for (std::size_t n : {10, 30})
        for (std::int64_t m : {2, 8})
            for (double eps : {0.05, 0.1, 0.2})
                for (std::uint64_t d = 0; d < 3; ++d) {
                    const RealVector x = random_direction(n, Seed{500 + d, n});
                    const auto r = small_ball_probe(x, m, eps, 40000, Seed{600 + d, static_cast<std::uint64_t>(m)});
                    worst = std::max(worst, r.mc.estimate / r.esseen_integral);
                    CHECK(r.mc.estimate <= kEsseenRatio * r.esseen_integral);
                }
    MESSAGE("max mc / integral: " << worst);
}

}  // TEST_SUITE
