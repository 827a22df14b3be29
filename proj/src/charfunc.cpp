#include "intmat/charfunc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "intmat/errors.hpp"
#include "intmat/sampling.hpp"

namespace intmat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearInteger = 0x1.0p-40;
constexpr std::size_t kMaxPanels = 100000;
constexpr int kMaxDepth = 48;

struct Simpson {
    double fa, fm, fb, whole;
};

template <typename Fn>
double adaptive_simpson(const Fn& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double F_eval(double y, std::int64_t m) {
    if (m < 1) throw DomainError("F_eval: m must be >= 1");
    // F has period 1; reduce first so sin() sees a small argument.
    const double r = y - std::nearbyint(y);
    const double s = std::sin(kPi * r);
    if (std::abs(s) < kNearInteger) return 1.0;
    const double k = static_cast<double>(2 * m + 1);
    return std::min(1.0, std::abs(std::sin(k * kPi * r) / (k * s)));
}

double G_eval(double y, double eta) {
    if (!(y >= 0.0)) throw DomainError("G_eval: y must be >= 0");
    if (y <= 1.0) return std::exp(-eta * y * y);
    return std::exp(-eta) / y;
}

double charfn_modulus(std::span<const double> x, double t, std::int64_t m) {
    const double scale = t / (2.0 * kPi * static_cast<double>(m));
    double product = 1.0;
    for (double xk : x) {
        product *= F_eval(xk * scale, m);
        if (product == 0.0) break;
    }
    return product;
}

double charfn_modulus(const RealVector& x, double t, std::int64_t m) {
    const auto values = x.to_doubles();
    return charfn_modulus(values, t, m);
}

double esseen_integral(std::span<const double> x, std::int64_t m, double epsilon, double rel_tol) {
    if (!(epsilon > 0.0)) throw DomainError("esseen_integral: epsilon must be > 0");
    if (m < 1) throw DomainError("esseen_integral: m must be >= 1");
    const double upper = 1.0 / epsilon;
    double dominant = 0.0;
    for (double xk : x) dominant = std::max(dominant, std::abs(xk));
    auto integrand = [&](double t) { return charfn_modulus(x, t, m); };

    // The fastest factor vanishes at t_j = 2 pi m j / ((2m+1) |x|_inf).
    std::size_t panels = 1;
    if (dominant > 0.0) {
        const double spacing = 2.0 * kPi * static_cast<double>(m) / (static_cast<double>(2 * m + 1) * dominant);
        panels = static_cast<std::size_t>(std::clamp(std::ceil(upper / spacing), 1.0, static_cast<double>(kMaxPanels)));
    }
    const double width = upper / static_cast<double>(panels);

    // Integrand is even and non-negative; integrate over [0, 1/eps] and double.
    std::vector<Simpson> coarse(panels);
    double coarse_total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = width * static_cast<double>(p);
        const double b = p + 1 == panels ? upper : width * static_cast<double>(p + 1);
        const double fa = integrand(a);
        const double fm = integrand(0.5 * (a + b));
        const double fb = integrand(b);
        coarse[p] = {fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
        coarse_total += coarse[p].whole;
    }
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = width * static_cast<double>(p);
        const double b = p + 1 == panels ? upper : width * static_cast<double>(p + 1);
        const double tol = rel_tol * std::max(std::abs(coarse[p].whole), 1e-3 * coarse_total / static_cast<double>(panels)) + 1e-300;
        total += adaptive_simpson(integrand, a, b, coarse[p].fa, coarse[p].fm, coarse[p].fb, coarse[p].whole, tol,
                                  kMaxDepth);
    }
    return 2.0 * epsilon * total;
}

double esseen_integral(const RealVector& x, std::int64_t m, double epsilon, double rel_tol) {
    const auto values = x.to_doubles();
    return esseen_integral(values, m, epsilon, rel_tol);
}

double epsilon_zero(std::int64_t m) {
    if (m < 1) throw DomainError("epsilon_zero: m must be >= 1");
    const double md = static_cast<double>(m);
    return std::sqrt(std::log2(md)) / md;
}

SmallBallReport small_ball_probe(const RealVector& x, std::int64_t m, double epsilon, std::uint64_t trials, Seed seed,
                                 unsigned threads, std::optional<LcdParams> lcd) {
    if (!(epsilon > 0.0)) throw DomainError("small_ball_probe: epsilon must be > 0");
    if (trials == 0) throw DomainError("small_ball_probe: trials must be >= 1");
    if (m < 1) throw DomainError("small_ball_probe: m must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> direction = x.to_doubles();
    const std::size_t n = direction.size();
    const EntryDistribution dist = EntryDistribution::uniform_symmetric(m);
    // |<X/m, x>| <= eps  <=>  |<X, x>| <= eps m
    const double radius = epsilon * static_cast<double>(m);

    const std::uint64_t hits = run_sharded(trials, seed, threads, [&](Pcg64& gen, std::uint64_t count) {
        std::uint64_t inside = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(dist.sample(gen)) * direction[i];
            if (std::abs(acc) <= radius) ++inside;
        }
        return inside;
    });

    SmallBallReport report;
    report.epsilon = epsilon;
    report.mc = make_estimate(hits, trials);
    report.mc.seed = seed;
    report.mc.n = n;
    report.mc.m = m;
    report.esseen_integral = esseen_integral(direction, m, epsilon);
    if (lcd) {
        lcd->validate();
        const double gamma = std::sqrt(lcd->beta);
        const double alpha_n = lcd->alpha * static_cast<double>(n);
        report.lcd_bound = epsilon / gamma + std::pow(lcd->alpha * lcd->beta * static_cast<double>(m), -alpha_n);
    }
    report.mc.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double derive_c2(std::int64_t max_m, std::size_t grid) {
    double best = INFINITY;
    for (std::int64_t m = 1; m <= max_m; ++m) {
        const double md = static_cast<double>(m);
        const double hi = std::min(1.0 / md, 0.5);
        for (std::size_t i = 1; i <= grid; ++i) {
            const double y = hi * static_cast<double>(i) / static_cast<double>(grid);
            const double my = md * y;
            best = std::min(best, (1.0 - F_eval(y, m)) / (my * my));
        }
    }
    // Floor to three significant digits; the 1e-9 absorbs rounding in the
    // division so an exact 0.8 is not floored to 0.799.
    const double quantum = std::pow(10.0, std::floor(std::log10(best)) - 2.0);
    return std::floor(best / quantum + 1e-9) * quantum;
}

double derive_eta(double c2, std::int64_t max_m, std::size_t grid) {
    const double start = std::min(std::log(kPi), c2);
    auto holds = [&](double eta) {
        for (std::int64_t m = 1; m <= max_m; ++m) {
            const double md = static_cast<double>(m);
            for (std::size_t i = 0; i <= grid; ++i) {
                const double y = 0.5 * static_cast<double>(i) / static_cast<double>(grid);
                if (F_eval(y, m) > G_eval(md * y, eta)) return false;
            }
        }
        return true;
    };
    for (int step = 0; step < 10000; ++step) {
        const double eta = start * (1.0 - 1e-4 * step);
        if (holds(eta)) return eta;
    }
    throw DomainError("derive_eta: no admissible eta found");
}

}  // namespace intmat
