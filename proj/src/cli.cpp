#include "intmat/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "intmat/charfunc.hpp"
#include "intmat/errors.hpp"
#include "intmat/io.hpp"
#include "intmat/mds_forge.hpp"
#include "intmat/sampling.hpp"
#include "intmat/singularity_lab.hpp"
#include "intmat/vector_geometry.hpp"

namespace intmat::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = INTMAT_VERSION;

struct Options {
    std::vector<std::size_t> n_list;
    std::vector<std::int64_t> m_list;
    std::string dist;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double level = 0.95;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::string input;
    std::string output;
    std::size_t n = 0;
    std::size_t k = 0;
    std::int64_t m = 1;
    std::uint64_t max_attempts = 64;
    std::string alpha;
    std::string beta;
    std::string dmax;
    std::string step;
    int precision = static_cast<int>(kDefaultPrecision);
    std::size_t grid = 1000;
    double eta = kDefaultEta;
    double eps = 0.0;
    bool json = false;
    bool csv = false;
    bool timing = false;
    unsigned threads = 0;
};

const char* command_name(Command c) {
    switch (c) {
        case Command::Estimate: return "estimate";
        case Command::Exact: return "exact";
        case Command::Fit: return "fit";
        case Command::MdsVerify: return "mds verify";
        case Command::MdsGenerate: return "mds generate";
        case Command::Lcd: return "lcd";
        case Command::Compress: return "compress";
        case Command::Charfunc: return "charfunc";
        case Command::Smallball: return "smallball";
        case Command::NormalVector: return "normal-vector";
    }
    return "?";
}

unsigned resolve_threads(unsigned flag) {
    if (flag != 0) return flag;
    if (const char* env = std::getenv("INTMAT_THREADS"); env != nullptr && *env != '\0') {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("INTMAT_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

json seed_json(Seed s) { return json{{"value", s.value}, {"stream", s.stream}}; }

json rational_json(const mpq_class& q) { return json{{"exact", q.get_str()}, {"value", q.get_d()}}; }

std::string rational_text(const mpq_class& q) { return fmt::format("{} ({})", q.get_str(), io::format_double(q.get_d())); }

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const mpz_class& v = m(r, c);
            if (v.fits_slong_p()) {
                row.push_back(v.get_si());
            } else {
                row.push_back(v.get_str());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

mpfr_prec_t checked_precision(int bits) {
    if (bits < 64) throw DomainError("--precision must be >= 64 bits");
    return static_cast<mpfr_prec_t>(bits);
}

double parse_unit_interval(const std::string& text, const char* flag) {
    const double v = Real::from_string(text).to_double();
    if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(flag) + " must lie in (0, 1)");
    return v;
}

EntryDistribution resolve_distribution(const std::string& spec, std::int64_t m) {
    constexpr std::string_view kCustom = "custom:";
    if (spec.rfind(kCustom, 0) == 0) return io::read_custom_distribution_file(spec.substr(kCustom.size()));
    if (!spec.empty()) throw DomainError("--dist must be of the form custom:<file>");
    return EntryDistribution::uniform_symmetric(m);
}

class Reporter {
public:
    Reporter(const RunConfig& config, std::ostream& out, bool timing) : config_(config), out_(out), timing_(timing) {}

    bool timing() const { return timing_; }
    OutputFormat format() const { return config_.format; }

    void require_format(std::initializer_list<OutputFormat> allowed) const {
        for (auto f : allowed)
            if (f == config_.format) return;
        throw DomainError(std::string("output format not supported by '") + command_name(config_.command) + "'");
    }

    // Every report echoes a seed, including commands that draw no randomness.
    json with_seed(json config) const {
        if (!config.contains("seed")) config["seed"] = seed_json(config_.seed);
        return config;
    }

    json document(json config, json result) const {
        json doc;
        doc["command"] = command_name(config_.command);
        doc["version"] = kVersion;
        doc["config"] = with_seed(std::move(config));
        doc["result"] = std::move(result);
        return doc;
    }

    std::string header(const json& config) const {
        std::string line = fmt::format("# intmat {} {}", kVersion, command_name(config_.command));
        const json echoed = with_seed(config);
        for (const auto& [key, value] : echoed.items()) {
            line += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
        }
        return line + "\n";
    }

    void write(const std::string& text) const {
        if (config_.output_path && config_.command != Command::MdsGenerate) {
            std::ofstream file(*config_.output_path);
            if (!file) throw DomainError("cannot write '" + config_.output_path->string() + "'");
            file << text;
        } else {
            out_ << text;
        }
    }

    void write_json(const json& doc) const { write(doc.dump(2) + "\n"); }

private:
    const RunConfig& config_;
    std::ostream& out_;
    bool timing_;
};

void cmd_estimate(const Options& o, const Reporter& rep, unsigned threads) {
    if (o.n_list.empty()) throw DomainError("estimate: --n is required");
    if (o.trials == 0) throw DomainError("estimate: --trials must be >= 1");
    const bool custom = !o.dist.empty();
    if (!custom && o.m_list.empty()) throw DomainError("estimate: --m or --dist is required");
    const std::vector<std::int64_t> ms = custom ? std::vector<std::int64_t>{0} : o.m_list;
    const Seed seed{o.seed, o.stream};

    json config{{"n", o.n_list}, {"trials", o.trials}, {"seed", seed_json(seed)}, {"level", o.level}};
    if (custom) {
        config["dist"] = o.dist;
    } else {
        config["m"] = o.m_list;
    }

    std::vector<EstimateReport> reports;
    for (std::size_t n : o.n_list) {
        for (std::int64_t m : ms) {
            reports.push_back(mc_singularity(n, resolve_distribution(o.dist, m), o.trials, seed, threads, o.level));
        }
    }

    if (rep.format() == OutputFormat::Csv) {
        std::ostringstream csv;
        csv << io::kEstimateCsvHeader << '\n';
        for (const auto& r : reports) io::write_estimate_csv_row(csv, r);
        rep.write(csv.str());
        return;
    }
    json rows = json::array();
    for (const auto& r : reports) {
        mpq_class exact(mpz_class(static_cast<unsigned long>(r.hits)), mpz_class(static_cast<unsigned long>(r.trials)));
        exact.canonicalize();
        json row{{"n", r.n},          {"m", r.m},
                 {"trials", r.trials}, {"hits", r.hits},
                 {"estimate", r.estimate}, {"estimate_exact", exact.get_str()},
                 {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
                 {"level", r.level},  {"seed", seed_json(r.seed)}};
        if (rep.timing()) row["elapsed"] = r.elapsed;
        rows.push_back(std::move(row));
    }
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, json{{"estimates", rows}}));
        return;
    }
    std::string text = rep.header(config);
    for (const auto& r : reports) {
        text += fmt::format("n={} m={} hits={}/{} estimate={} ci{}=[{}, {}]", r.n, r.m, r.hits, r.trials,
                            io::format_double(r.estimate), r.level, io::format_double(r.ci_low),
                            io::format_double(r.ci_high));
        if (rep.timing()) text += fmt::format(" elapsed={:.3f}s", r.elapsed);
        text += "\n";
    }
    rep.write(text);
}

void cmd_exact(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    if (o.n_list.size() != 1 || o.m_list.size() != 1) throw DomainError("exact: pass exactly one --n and one --m");
    const std::size_t n = o.n_list.front();
    const std::int64_t m = o.m_list.front();
    const json config{{"n", n}, {"m", m}, {"budget", o.budget}};
    const mpq_class fraction = exact_singular_fraction(n, m, o.budget);
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(2 * m + 1), static_cast<unsigned long>(n * n));
    const mpz_class singular = fraction.get_num() * (total / fraction.get_den());

    json result{{"singular_fraction", rational_json(fraction)},
                {"matrices", total.get_str()},
                {"singular", singular.get_str()}};
    if (n >= 2) result["lower_bound"] = rational_json(lower_bound(n, m));
    if (m >= 1) result["schwartz_zippel_bound"] = rational_json(schwartz_zippel_bound(n, m));

    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    std::string text = rep.header(config);
    text += "singular_fraction " + rational_text(fraction) + "\n";
    text += "singular " + singular.get_str() + " of " + total.get_str() + "\n";
    if (n >= 2) text += "lower_bound " + rational_text(lower_bound(n, m)) + "\n";
    if (m >= 1) text += "schwartz_zippel_bound " + rational_text(schwartz_zippel_bound(n, m)) + "\n";
    rep.write(text);
}

void cmd_fit(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    if (o.input.empty()) throw DomainError("fit: --input is required");
    std::vector<FitPoint> points;
    if (o.input == "-") {
        points = io::read_fit_points(std::cin);
    } else {
        std::ifstream in(o.input);
        if (!in) throw ParseError("cannot open '" + o.input + "'");
        points = io::read_fit_points(in);
    }
    const ExponentFit fit = fit_exponent(points);
    const json config{{"input", o.input}};
    json used = json::array();
    for (const auto& p : fit.points) used.push_back(json{{"n", p.n}, {"m", p.m}, {"probability", p.probability}});
    const json result{
        {"c_hat", fit.c_hat}, {"intercept", fit.intercept}, {"residual", fit.residual}, {"points", used}};
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    rep.write(rep.header(config) + fmt::format("c_hat {}\nintercept {}\nresidual {}\npoints {}\n",
                                               io::format_double(fit.c_hat), io::format_double(fit.intercept),
                                               io::format_double(fit.residual), fit.points.size()));
}

void cmd_mds_verify(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    if (o.input.empty()) throw DomainError("mds verify: --input is required");
    const IntMatrix matrix = io::read_matrix_file(o.input);
    const MdsVerdict verdict = is_mds(matrix);
    const json config{{"input", o.input}, {"k", matrix.rows()}, {"n", matrix.cols()}};
    json result{{"is_mds", verdict.is_mds}, {"minors_checked", verdict.minors_checked}};
    result["witness"] = verdict.witness ? json(*verdict.witness) : json(nullptr);
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    std::string text = rep.header(config);
    text += fmt::format("is_mds {}\nminors_checked {}\n", verdict.is_mds, verdict.minors_checked);
    if (verdict.witness) {
        text += "witness";
        for (std::size_t c : *verdict.witness) text += fmt::format(" {}", c);
        text += "\n";
    }
    rep.write(text);
}

void cmd_mds_generate(const Options& o, const Reporter& rep, bool m_given, const RunConfig& cfg) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    const Seed seed{o.seed, o.stream};
    json config{{"k", o.k}, {"n", o.n}, {"seed", seed_json(seed)}, {"max_attempts", o.max_attempts}};
    config["m"] = m_given ? json(o.m) : json("auto");
    if (cfg.output_path) config["output"] = cfg.output_path->string();

    const GenerationReport report =
        m_given ? generate_mds(o.k, o.n, o.m, o.max_attempts, seed) : generate_mds_auto(o.k, o.n, o.max_attempts, seed);
    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path);
        if (!file) throw DomainError("cannot write '" + cfg.output_path->string() + "'");
        io::write_matrix(file, report.matrix);
    }
    const json result{{"matrix", matrix_json(report.matrix)},
                      {"attempts", report.attempts},
                      {"m_used", report.m_used},
                      {"seed", seed_json(report.seed)}};
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    std::ostringstream text;
    text << rep.header(config) << "attempts " << report.attempts << "\nm_used " << report.m_used << "\n";
    if (!cfg.output_path) io::write_matrix(text, report.matrix);
    rep.write(text.str());
}

RealVector load_unit_vector(const std::string& path, mpfr_prec_t precision) {
    if (path.empty()) throw DomainError("--input is required");
    return normalize(io::read_vector_file(path, precision));
}

void cmd_lcd(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    const mpfr_prec_t prec = checked_precision(o.precision);
    const RealVector x = load_unit_vector(o.input, prec);
    const LcdParams params{parse_unit_interval(o.alpha, "--alpha"), parse_unit_interval(o.beta, "--beta")};
    if (o.dmax.empty() || o.step.empty()) throw DomainError("lcd: --dmax and --step are required");
    const Real d_max = Real::from_string(o.dmax, prec);
    const Real step = Real::from_string(o.step, prec);
    const LcdScanResult scan = lcd_scan(x, params, d_max, step);

    const json config{{"input", o.input}, {"alpha", o.alpha}, {"beta", o.beta},
                      {"dmax", o.dmax},   {"step", o.step},   {"precision", o.precision}};
    json result{{"exceeds_dmax", !scan.lcd_upper.has_value()},
                {"grid_step", scan.grid_step.to_string(30)},
                {"d_max", scan.d_max.to_string(30)},
                {"grid_points_checked", scan.grid_points_checked}};
    result["lcd_upper"] = scan.lcd_upper ? json(scan.lcd_upper->to_string(30)) : json(nullptr);
    if (scan.certificate) {
        result["certificate"] = json{{"sparse_indices", scan.certificate->sparse_indices},
                                     {"residual", scan.certificate->residual.to_string(30)}};
    }
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    std::string text = rep.header(config);
    if (scan.lcd_upper) {
        text += "lcd_upper " + scan.lcd_upper->to_string(30) + "\n";
        text += "residual " + scan.certificate->residual.to_string(30) + "\n";
    } else {
        text += "lcd_upper > " + scan.d_max.to_string(30) + " (no grid point passes)\n";
    }
    text += fmt::format("grid_points_checked {}\n", scan.grid_points_checked);
    rep.write(text);
}

void cmd_compress(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    const mpfr_prec_t prec = checked_precision(o.precision);
    const RealVector x = load_unit_vector(o.input, prec);
    const LcdParams params{parse_unit_interval(o.alpha, "--alpha"), parse_unit_interval(o.beta, "--beta")};
    const std::size_t s = sparse_budget(params.alpha, x.size());
    const Real residual = sparse_residual(x, s);
    const bool compressible = is_compressible(x, params);
    const json config{{"input", o.input}, {"alpha", o.alpha}, {"beta", o.beta}, {"precision", o.precision}};
    const json result{{"is_compressible", compressible}, {"sparse_count", s}, {"residual", residual.to_string(30)}};
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    rep.write(rep.header(config) + fmt::format("is_compressible {}\nsparse_count {}\nresidual {}\n", compressible, s,
                                               residual.to_string(30)));
}

void cmd_charfunc(const Options& o, const Reporter& rep) {
    if (o.m < 1) throw DomainError("charfunc: --m must be >= 1");
    if (o.grid < 1) throw DomainError("charfunc: --grid must be >= 1");
    const json config{{"m", o.m}, {"grid", o.grid}, {"eta", o.eta}};
    std::vector<std::array<double, 3>> rows;
    for (std::size_t i = 0; i <= o.grid; ++i) {
        const double y = 0.5 * static_cast<double>(i) / static_cast<double>(o.grid);
        rows.push_back({y, F_eval(y, o.m), G_eval(static_cast<double>(o.m) * y, o.eta)});
    }
    if (rep.format() == OutputFormat::Json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(json{{"y", r[0]}, {"F", r[1]}, {"G_bound", r[2]}});
        rep.write_json(rep.document(config, json{{"rows", arr}}));
        return;
    }
    std::string text = rep.format() == OutputFormat::Human ? rep.header(config) : std::string();
    text += "y,F,G_bound\n";
    for (const auto& r : rows) {
        text += io::format_double(r[0]) + "," + io::format_double(r[1]) + "," + io::format_double(r[2]) + "\n";
    }
    rep.write(text);
}

void cmd_smallball(const Options& o, const Reporter& rep, unsigned threads) {
    if (o.trials == 0) throw DomainError("smallball: --trials must be >= 1");
    const Seed seed{o.seed, o.stream};
    const mpfr_prec_t prec = checked_precision(o.precision);
    RealVector x = o.input.empty() ? random_direction(o.n, Seed{o.seed, o.stream ^ 0xD1BEC7104ULL}, prec)
                                   : load_unit_vector(o.input, prec);
    if (o.input.empty() && o.n == 0) throw DomainError("smallball: --n or --input is required");
    std::optional<LcdParams> lcd;
    if (!o.alpha.empty() || !o.beta.empty()) {
        lcd = LcdParams{parse_unit_interval(o.alpha, "--alpha"), parse_unit_interval(o.beta, "--beta")};
    }
    const SmallBallReport report = small_ball_probe(x, o.m, o.eps, o.trials, seed, threads, lcd);

    json config{{"n", x.size()}, {"m", o.m}, {"eps", o.eps}, {"trials", o.trials}, {"seed", seed_json(seed)}};
    config["direction"] = o.input.empty() ? json("random") : json(o.input);
    if (lcd) {
        config["alpha"] = o.alpha;
        config["beta"] = o.beta;
    }
    if (rep.format() == OutputFormat::Csv) {
        rep.write(fmt::format("epsilon,trials,hits,estimate,ci_low,ci_high,esseen_integral,seed\n{},{},{},{},{},{},{},{}\n",
                              io::format_double(report.epsilon), report.mc.trials, report.mc.hits,
                              io::format_double(report.mc.estimate), io::format_double(report.mc.ci_low),
                              io::format_double(report.mc.ci_high), io::format_double(report.esseen_integral),
                              seed.value));
        return;
    }
    json result{{"epsilon", report.epsilon},
                {"epsilon_zero", epsilon_zero(o.m)},
                {"trials", report.mc.trials},
                {"hits", report.mc.hits},
                {"mc_probability", report.mc.estimate},
                {"ci_low", report.mc.ci_low},
                {"ci_high", report.mc.ci_high},
                {"esseen_integral", report.esseen_integral}};
    result["lcd_bound"] = report.lcd_bound ? json(*report.lcd_bound) : json(nullptr);
    if (rep.timing()) result["elapsed"] = report.mc.elapsed;
    if (rep.format() == OutputFormat::Json) {
        rep.write_json(rep.document(config, result));
        return;
    }
    std::string text = rep.header(config);
    for (const auto& [key, value] : result.items()) text += key + " " + value.dump() + "\n";
    rep.write(text);
}

void cmd_normal_vector(const Options& o, const Reporter& rep) {
    rep.require_format({OutputFormat::Human, OutputFormat::Json});
    if (o.input.empty()) throw DomainError("normal-vector: --input is required");
    const mpfr_prec_t prec = checked_precision(o.precision);
    const IntMatrix rows = io::read_matrix_file(o.input);
    const RealVector x = normal_vector(rows, o.m, prec);
    const json config{{"input", o.input}, {"m", o.m}, {"precision", o.precision}};
    if (rep.format() == OutputFormat::Json) {
        json entries = json::array();
        for (const auto& e : x.entries()) entries.push_back(e.to_string(40));
        rep.write_json(rep.document(config, json{{"vector", entries}}));
        return;
    }
    std::ostringstream text;
    io::write_vector(text, x);
    rep.write(text.str());
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact MDS verification and singularity experiments for random integer matrices", "intmat"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "Worker threads (default: INTMAT_THREADS or 1)")->check(CLI::PositiveNumber);
    auto* json_flag = app.add_flag("--json", o.json, "Emit JSON");
    app.add_flag("--csv", o.csv, "Emit CSV")->excludes(json_flag);
    app.add_flag("--timing", o.timing, "Include wall-clock timings");

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "64-bit seed")->required();
        sub->add_option("--stream", o.stream, "64-bit stream id");
    };
    auto add_output = [&](CLI::App* sub, const char* what) { sub->add_option("--output", o.output, what); };

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of Pr[M singular]");
    estimate->add_option("--n", o.n_list, "Matrix size(s)")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--m", o.m_list, "Entry bound(s): uniform on {-m..m}")->check(CLI::NonNegativeNumber);
    estimate->add_option("--dist", o.dist, "custom:<file> with a JSON pmf");
    estimate->add_option("--trials", o.trials, "Trials per (n, m)")->required();
    estimate->add_option("--level", o.level, "Confidence level")->check(CLI::Range(0.5, 0.999999));
    add_seed(estimate);
    add_output(estimate, "Write the report here");

    auto* exact = app.add_subcommand("exact", "Exact singular fraction by full enumeration");
    exact->add_option("--n", o.n_list, "Matrix size")->required()->check(CLI::PositiveNumber);
    exact->add_option("--m", o.m_list, "Entry bound")->required()->check(CLI::NonNegativeNumber);
    exact->add_option("--budget", o.budget, "Maximum number of matrices to enumerate");
    add_output(exact, "Write the report here");

    auto* fit = app.add_subcommand("fit", "Fit c in p = m^(-c n) from estimate CSV");
    fit->add_option("--input", o.input, "Estimate CSV ('-' for stdin)")->required();
    add_output(fit, "Write the report here");

    auto* mds = app.add_subcommand("mds", "MDS matrix verification and generation");
    mds->require_subcommand(1);
    auto* verify = mds->add_subcommand("verify", "Check every k x k minor");
    verify->add_option("--input", o.input, "Matrix file")->required();
    add_output(verify, "Write the report here");
    auto* generate = mds->add_subcommand("generate", "Rejection-sample a k x n MDS matrix");
    generate->add_option("--k", o.k, "Rows")->required()->check(CLI::PositiveNumber);
    generate->add_option("--n", o.n, "Columns")->required()->check(CLI::PositiveNumber);
    auto* m_opt = generate->add_option("--m", o.m, "Entry bound (default: heuristic, doubled on failure)")
                      ->check(CLI::PositiveNumber);
    generate->add_option("--max-attempts", o.max_attempts, "Attempts per m")->check(CLI::PositiveNumber);
    add_seed(generate);
    add_output(generate, "Matrix file to write");

    auto* lcd = app.add_subcommand("lcd", "Grid scan for the least common denominator");
    lcd->add_option("--input", o.input, "Vector file")->required();
    lcd->add_option("--alpha", o.alpha)->required();
    lcd->add_option("--beta", o.beta)->required();
    lcd->add_option("--dmax", o.dmax)->required();
    lcd->add_option("--step", o.step)->required();
    lcd->add_option("--precision", o.precision, "Mantissa bits");
    add_output(lcd, "Write the report here");

    auto* compress = app.add_subcommand("compress", "(alpha, beta)-compressibility test");
    compress->add_option("--input", o.input, "Vector file")->required();
    compress->add_option("--alpha", o.alpha)->required();
    compress->add_option("--beta", o.beta)->required();
    compress->add_option("--precision", o.precision, "Mantissa bits");
    add_output(compress, "Write the report here");

    auto* charfunc = app.add_subcommand("charfunc", "Tabulate F and the G envelope on [0, 1/2]");
    charfunc->add_option("--m", o.m)->required()->check(CLI::PositiveNumber);
    charfunc->add_option("--grid", o.grid, "Grid intervals");
    charfunc->add_option("--eta", o.eta, "Envelope constant");
    add_output(charfunc, "Write the table here");

    auto* smallball = app.add_subcommand("smallball", "Monte Carlo small-ball probability Pr[|<X/m, x>| <= eps]");
    smallball->add_option("--n", o.n, "Dimension (random direction)");
    smallball->add_option("--m", o.m)->required()->check(CLI::PositiveNumber);
    smallball->add_option("--eps", o.eps)->required();
    smallball->add_option("--trials", o.trials)->required();
    smallball->add_option("--input", o.input, "Direction vector file (default: random)");
    smallball->add_option("--alpha", o.alpha, "LCD alpha for the attached bound");
    smallball->add_option("--beta", o.beta, "LCD beta for the attached bound");
    smallball->add_option("--precision", o.precision, "Mantissa bits");
    add_seed(smallball);
    add_output(smallball, "Write the report here");

    auto* normal = app.add_subcommand("normal-vector", "Unit vector orthogonal to the rows of a matrix");
    normal->add_option("--input", o.input, "Matrix file")->required();
    normal->add_option("--m", o.m, "Entry scale (kernel is scale invariant)")->check(CLI::PositiveNumber);
    normal->add_option("--precision", o.precision, "Mantissa bits");
    add_output(normal, "Write the vector here");

    std::vector<const char*> argv{"intmat"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "intmat: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    RunConfig config;
    config.seed = Seed{o.seed, o.stream};
    config.format = o.json ? OutputFormat::Json : (o.csv ? OutputFormat::Csv : OutputFormat::Human);
    if (!o.output.empty()) config.output_path = o.output;

    try {
        config.threads = resolve_threads(o.threads);
        if (estimate->parsed()) config.command = Command::Estimate;
        else if (exact->parsed()) config.command = Command::Exact;
        else if (fit->parsed()) config.command = Command::Fit;
        else if (verify->parsed()) config.command = Command::MdsVerify;
        else if (generate->parsed()) config.command = Command::MdsGenerate;
        else if (lcd->parsed()) config.command = Command::Lcd;
        else if (compress->parsed()) config.command = Command::Compress;
        else if (charfunc->parsed()) config.command = Command::Charfunc;
        else if (smallball->parsed()) config.command = Command::Smallball;
        else config.command = Command::NormalVector;

        const Reporter reporter(config, out, o.timing);
        switch (config.command) {
            case Command::Estimate: cmd_estimate(o, reporter, config.threads); break;
            case Command::Exact: cmd_exact(o, reporter); break;
            case Command::Fit: cmd_fit(o, reporter); break;
            case Command::MdsVerify: cmd_mds_verify(o, reporter); break;
            case Command::MdsGenerate: cmd_mds_generate(o, reporter, m_opt->count() > 0, config); break;
            case Command::Lcd: cmd_lcd(o, reporter); break;
            case Command::Compress: cmd_compress(o, reporter); break;
            case Command::Charfunc: cmd_charfunc(o, reporter); break;
            case Command::Smallball: cmd_smallball(o, reporter, config.threads); break;
            case Command::NormalVector: cmd_normal_vector(o, reporter); break;
        }
    } catch (const GenerationFailure& e) {
        err << "intmat: " << e.what() << " (attempts=" << e.attempts() << ", last witness:";
        for (std::size_t c : e.last_witness()) err << ' ' << c;
        err << ")\n";
        return e.exit_code();
    } catch (const Error& e) {
        err << "intmat: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "intmat: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace intmat::cli
