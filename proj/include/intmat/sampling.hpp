#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "intmat/exact_linalg.hpp"
#include "intmat/rng.hpp"

namespace intmat {

// Finite integer-valued law. Either uniform on {-m, ..., m} or an arbitrary
// pmf over distinct integers with exact rational masses summing to one.
//
// Custom laws are sampled from a cumulative table of thresholds scaled to a
// 2^64 grid, so each mass is reproduced to within 2^-64.
class EntryDistribution {
public:
    enum class Kind { UniformSymmetric, Custom };

    // m >= 0; m = 0 is the point mass at zero.
    static EntryDistribution uniform_symmetric(std::int64_t m);
    // Throws DomainError unless the masses are non-negative and sum to 1
    // exactly, and the support is non-empty with distinct values.
    static EntryDistribution custom(std::vector<std::int64_t> support, std::vector<mpq_class> pmf);

    Kind kind() const noexcept { return kind_; }
    // Largest |value| in the support; equals m for uniform_symmetric(m).
    std::int64_t max_abs() const noexcept { return max_abs_; }
    const std::vector<std::int64_t>& support() const noexcept { return support_; }
    const std::vector<mpq_class>& pmf() const noexcept { return pmf_; }
    mpq_class max_probability() const;
    // Probability of value v (0 outside the support).
    mpq_class probability(std::int64_t v) const;
    std::string describe() const;

    std::int64_t sample(Pcg64& gen) const noexcept {
        if (kind_ == Kind::UniformSymmetric) {
            return static_cast<std::int64_t>(gen.uniform_to(2 * static_cast<std::uint64_t>(max_abs_))) - max_abs_;
        }
        return sample_custom(gen);
    }

    void fill(std::span<std::int64_t> out, Pcg64& gen) const noexcept {
        for (auto& v : out) v = sample(gen);
    }

private:
    EntryDistribution() = default;
    std::int64_t sample_custom(Pcg64& gen) const noexcept;

    Kind kind_ = Kind::UniformSymmetric;
    std::int64_t max_abs_ = 0;
    std::vector<std::int64_t> support_;
    std::vector<mpq_class> pmf_;
    // thresholds_[i] = floor(2^64 * P(X <= support_[i])), last entry implicit.
    std::vector<std::uint64_t> thresholds_;
};

IntMatrix sample_matrix(std::size_t n, std::size_t k, const EntryDistribution& dist, Seed seed);
IntMatrix sample_vector(std::size_t n, const EntryDistribution& dist, Seed seed);

// m-fold convolution of the law on {-1, 0, 1} with masses (mu/2, 1-mu, mu/2).
EntryDistribution vempala_sum_distribution(const mpq_class& mu, std::int64_t m);

}  // namespace intmat
