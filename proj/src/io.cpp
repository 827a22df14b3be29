#include "intmat/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "intmat/errors.hpp"

namespace intmat::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return in;
}

mpz_class parse_integer(const std::string& token) {
    mpz_class v;
    const std::size_t start = (!token.empty() && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
    const bool digits = token.size() > start &&
                        std::all_of(token.begin() + static_cast<std::ptrdiff_t>(start), token.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || v.set_str(token[0] == '+' ? token.substr(1) : token, 10) != 0) {
        throw ParseError("not an integer: '" + token + "'");
    }
    return v;
}

std::size_t parse_count(const std::string& token, const char* what) {
    const mpz_class v = parse_integer(token);
    if (sgn(v) <= 0 || !v.fits_ulong_p()) throw ParseError(std::string(what) + " must be a positive integer");
    return v.get_ui();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t\r"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace

IntMatrix read_matrix(std::istream& in) {
    std::string rows_tok;
    std::string cols_tok;
    if (!(in >> rows_tok >> cols_tok)) throw ParseError("matrix: missing 'rows cols' header");
    const std::size_t rows = parse_count(rows_tok, "matrix rows");
    const std::size_t cols = parse_count(cols_tok, "matrix cols");
    std::vector<mpz_class> entries;
    entries.reserve(rows * cols);
    std::string token;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        if (!(in >> token)) {
            throw ParseError("matrix: expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(i));
        }
        entries.push_back(parse_integer(token));
    }
    if (in >> token) throw ParseError("matrix: trailing content '" + token + "'");
    return IntMatrix(rows, cols, std::move(entries));
}

IntMatrix read_matrix_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c != 0) out << ' ';
            out << m(r, c).get_str();
        }
        out << '\n';
    }
}

RealVector read_vector(std::istream& in, mpfr_prec_t precision) {
    std::string n_tok;
    if (!(in >> n_tok)) throw ParseError("vector: missing length header");
    const std::size_t n = parse_count(n_tok, "vector length");
    std::vector<Real> entries;
    entries.reserve(n);
    std::string token;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(in >> token)) throw ParseError("vector: expected " + std::to_string(n) + " entries, got " + std::to_string(i));
        entries.push_back(Real::from_string(token, precision));
    }
    if (in >> token) throw ParseError("vector: trailing content '" + token + "'");
    return RealVector(std::move(entries), precision);
}

RealVector read_vector_file(const std::filesystem::path& path, mpfr_prec_t precision) {
    auto in = open_input(path);
    return read_vector(in, precision);
}

void write_vector(std::ostream& out, const RealVector& v, int digits) {
    out << v.size() << '\n';
    for (const auto& e : v.entries()) out << e.to_string(digits) << '\n';
}

mpq_class parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const mpz_class num = parse_integer(text.substr(0, slash));
        const mpz_class den = parse_integer(text.substr(slash + 1));
        if (sgn(den) == 0) throw ParseError("rational with zero denominator: '" + text + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(parse_integer(text));
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("not a rational: '" + text + "'");
    }
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::string digits = (whole.empty() || whole == "-" || whole == "+") ? std::string("0") : whole;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = abs(parse_integer(digits)) * scale + parse_integer(frac);
    mpq_class q(negative ? mpz_class(-num) : num, scale);
    q.canonicalize();
    return q;
}

EntryDistribution parse_custom_distribution(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("custom distribution: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("support") || !doc.contains("pmf") || !doc["support"].is_array() ||
        !doc["pmf"].is_array()) {
        throw ParseError("custom distribution: expected {\"support\": [...], \"pmf\": [...]}");
    }
    std::vector<std::int64_t> support;
    for (const auto& v : doc["support"]) {
        if (!v.is_number_integer()) throw ParseError("custom distribution: support values must be integers");
        support.push_back(v.get<std::int64_t>());
    }
    std::vector<mpq_class> pmf;
    for (const auto& v : doc["pmf"]) {
        if (v.is_string()) {
            pmf.push_back(parse_rational(v.get<std::string>()));
        } else if (v.is_number_integer()) {
            pmf.emplace_back(v.get<long>());
        } else {
            throw ParseError("custom distribution: pmf entries must be rational strings such as \"1/3\"");
        }
    }
    return EntryDistribution::custom(std::move(support), std::move(pmf));
}

EntryDistribution read_custom_distribution_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_custom_distribution(buf.str());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_estimate_csv_row(std::ostream& out, const EstimateReport& r) {
    out << r.n << ',' << r.m << ',' << r.trials << ',' << r.hits << ',' << format_double(r.estimate) << ','
        << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << r.seed.value << '\n';
}

std::vector<FitPoint> read_fit_points(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("fit input: empty CSV");
    const auto header = split_csv(line);
    auto column = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError(std::string("fit input: missing column '") + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t n_col = column("n");
    const std::size_t m_col = column("m");
    const std::size_t p_col = column("estimate");
    std::vector<FitPoint> points;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) throw ParseError("fit input: row has wrong number of columns");
        if (cells == header) continue;  // concatenated CSV files repeat the header
        FitPoint p;
        p.n = parse_count(cells[n_col], "n");
        const mpz_class m = parse_integer(cells[m_col]);
        if (!m.fits_slong_p()) throw ParseError("fit input: m out of range");
        p.m = m.get_si();
        try {
            std::size_t used = 0;
            p.probability = std::stod(cells[p_col], &used);
            if (used != cells[p_col].size()) throw ParseError("fit input: bad estimate '" + cells[p_col] + "'");
        } catch (const std::logic_error&) {
            throw ParseError("fit input: bad estimate '" + cells[p_col] + "'");
        }
        points.push_back(p);
    }
    return points;
}

}  // namespace intmat::io
