#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "intmat/errors.hpp"
#include "intmat/exact_linalg.hpp"
#include "intmat/rng.hpp"

namespace intmat {

struct MdsVerdict {
    bool is_mds = false;
    // Lexicographically first column set whose k x k minor is singular.
    std::optional<std::vector<std::size_t>> witness;
    std::uint64_t minors_checked = 0;
};

struct GenerationReport {
    IntMatrix matrix;
    std::uint64_t attempts = 0;
    std::int64_t m_used = 0;
    Seed seed;
};

class GenerationFailure : public Error {
public:
    GenerationFailure(const std::string& what, std::uint64_t attempts, std::vector<std::size_t> last_witness)
        : Error(what), attempts_(attempts), last_witness_(std::move(last_witness)) {}
    int exit_code() const noexcept override { return 2; }
    std::uint64_t attempts() const noexcept { return attempts_; }
    const std::vector<std::size_t>& last_witness() const noexcept { return last_witness_; }

private:
    std::uint64_t attempts_;
    std::vector<std::size_t> last_witness_;
};

// Checks all C(n, k) minors of a k x n matrix in lexicographic column order,
// stopping at the first singular one. Nonsingularity modulo a prime is taken
// as proof of nonsingularity; a minor is reported singular only after an
// exact determinant. Throws DimensionError when k > n.
MdsVerdict is_mds(const IntMatrix& m);

// Rejection sampling from uniform_symmetric(m) until is_mds passes. Attempts
// draw sequentially from a single generator seeded with `seed`.
// Throws GenerationFailure after `max_attempts` misses.
GenerationReport generate_mds(std::size_t k, std::size_t n, std::int64_t m, std::uint64_t max_attempts, Seed seed);

// Smallest m with (e n / (k m^c))^k <= 1/2, clamped to [1, 2^40].
std::int64_t default_generation_m(std::size_t k, std::size_t n, double c = 0.1);

// generate_mds starting at default_generation_m(k, n), doubling m after every
// exhausted block of `max_attempts`, at most `max_doublings` times.
GenerationReport generate_mds_auto(std::size_t k, std::size_t n, std::uint64_t max_attempts, Seed seed,
                                   unsigned max_doublings = 8);

// ceil(sqrt(n / k)): the smallest alphabet size the two-row pigeonhole
// argument does not rule out. Needs k >= 2.
std::uint64_t pigeonhole_min_alphabet(std::size_t k, std::size_t n);

// k columns whose first two entries agree, if any exist. Their minor has two
// proportional rows and is therefore singular.
std::optional<std::vector<std::size_t>> pigeonhole_witness(const IntMatrix& m);

// (e n / (k m^c))^k clamped to [0, 1]. Needs 0 < c <= 1.
double union_bound_failure(std::size_t k, std::size_t n, std::int64_t m, double c);

}  // namespace intmat
