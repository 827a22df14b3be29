#pragma once

// Text formats shared by the CLI and the bindings.
//
//   matrix file: "rows cols" on the first line, then rows of space-separated
//                decimal integers, newline-terminated.
//   vector file: "n" on the first line, then n decimal reals.
//   custom law:  JSON {"support": [ints], "pmf": ["p/q", ...]}.
//   estimate CSV: n,m,trials,hits,estimate,ci_low,ci_high,seed

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "intmat/exact_linalg.hpp"
#include "intmat/monte_carlo.hpp"
#include "intmat/sampling.hpp"
#include "intmat/singularity_lab.hpp"
#include "intmat/vector_geometry.hpp"

namespace intmat::io {

IntMatrix read_matrix(std::istream& in);
IntMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const IntMatrix& m);

RealVector read_vector(std::istream& in, mpfr_prec_t precision = kDefaultPrecision);
RealVector read_vector_file(const std::filesystem::path& path, mpfr_prec_t precision = kDefaultPrecision);
void write_vector(std::ostream& out, const RealVector& v, int digits = 40);

// "p/q", "p" or a finite decimal such as "0.125", converted exactly.
mpq_class parse_rational(const std::string& text);

EntryDistribution parse_custom_distribution(const std::string& json_text);
EntryDistribution read_custom_distribution_file(const std::filesystem::path& path);

inline constexpr const char* kEstimateCsvHeader = "n,m,trials,hits,estimate,ci_low,ci_high,seed";
void write_estimate_csv_row(std::ostream& out, const EstimateReport& r);
// Reads (n, m, estimate) from CSV with the estimate header.
std::vector<FitPoint> read_fit_points(std::istream& in);

// %.17g: parses back to the same double.
std::string format_double(double v);

}  // namespace intmat::io
