#include "intmat/monte_carlo.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "intmat/errors.hpp"

namespace intmat {

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    const boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + level / 2.0);
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level) {
    if (trials == 0) throw DomainError("wilson_interval: trials must be >= 1");
    if (hits > trials) throw DomainError("wilson_interval: hits exceed trials");
    const double n = static_cast<double>(trials);
    if (hits == 0) {
        const double upper = level == 0.95 ? 3.0 / n : -std::log1p(-level) / n;
        return {0.0, std::min(1.0, upper)};
    }
    const double z = z_for_level(level);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

EstimateReport make_estimate(std::uint64_t hits, std::uint64_t trials, double level) {
    const Interval ci = wilson_interval(hits, trials, level);
    EstimateReport r;
    r.trials = trials;
    r.hits = hits;
    r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.level = level;
    return r;
}

}  // namespace intmat
