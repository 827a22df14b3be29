#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "intmat/charfunc.hpp"
#include "intmat/errors.hpp"
#include "intmat/exact_linalg.hpp"
#include "intmat/mds_forge.hpp"
#include "intmat/sampling.hpp"
#include "intmat/singularity_lab.hpp"
#include "intmat/vector_geometry.hpp"

namespace py = pybind11;
using namespace intmat;

namespace {

// Python ints cross the boundary as decimal strings, so no width is lost.
mpz_class to_mpz(const py::handle& v) { return mpz_class(py::str(v).cast<std::string>()); }
py::int_ to_py(const mpz_class& z) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10))); }
py::tuple to_py(const mpq_class& q) { return py::make_tuple(to_py(mpz_class(q.get_num())), to_py(mpz_class(q.get_den()))); }

IntMatrix to_matrix(const py::sequence& rows) {
    const std::size_t r = py::len(rows);
    if (r == 0) throw DimensionError("matrix needs at least one row");
    const std::size_t c = py::len(rows[0]);
    std::vector<mpz_class> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        const auto seq = row.cast<py::sequence>();
        if (py::len(seq) != c) throw DimensionError("ragged matrix rows");
        for (const auto& v : seq) entries.push_back(to_mpz(v));
    }
    return IntMatrix(r, c, std::move(entries));
}

py::list from_matrix(const IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
        rows.append(row);
    }
    return rows;
}

py::dict from_estimate(const EstimateReport& e) {
    py::dict d;
    d["trials"] = e.trials;
    d["hits"] = e.hits;
    d["estimate"] = e.estimate;
    d["ci_low"] = e.ci_low;
    d["ci_high"] = e.ci_high;
    d["level"] = e.level;
    d["seed"] = py::make_tuple(e.seed.value, e.seed.stream);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    auto base = py::register_exception<Error>(mod, "IntmatError", PyExc_RuntimeError);
    py::register_exception<DomainError>(mod, "DomainError", base.ptr());
    py::register_exception<DimensionError>(mod, "DimensionError", base.ptr());
    py::register_exception<ParseError>(mod, "ParseError", base.ptr());
    py::register_exception<FitError>(mod, "FitError", base.ptr());
    py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", base.ptr());
    py::register_exception<GenerationFailure>(mod, "GenerationFailure", base.ptr());

    mod.attr("__version__") = INTMAT_VERSION;

    mod.def("det", [](const py::sequence& rows) { return to_py(det(to_matrix(rows))); });
    mod.def("rank", [](const py::sequence& rows) { return rank(to_matrix(rows)); });
    mod.def("is_singular", [](const py::sequence& rows) { return is_singular(to_matrix(rows)); });
    mod.def("kernel_basis", [](const py::sequence& rows) {
        py::list out;
        for (const auto& v : kernel_basis(to_matrix(rows))) {
            py::list vec;
            for (const auto& q : v.entries) vec.append(to_py(q));
            out.append(vec);
        }
        return out;
    });

    mod.def("exact_singular_fraction", [](std::size_t n, std::int64_t m, std::uint64_t budget) {
        return to_py(exact_singular_fraction(n, m, budget));
    }, py::arg("n"), py::arg("m"), py::arg("budget") = kDefaultEnumerationBudget);
    mod.def("lower_bound", [](std::size_t n, std::int64_t m) { return to_py(lower_bound(n, m)); });
    mod.def("mc_singularity", [](std::size_t n, std::int64_t m, std::uint64_t trials, std::uint64_t seed,
                                 std::uint64_t stream, unsigned threads, double level) {
        EstimateReport r;
        {
            py::gil_scoped_release release;
            r = mc_singularity(n, EntryDistribution::uniform_symmetric(m), trials, Seed{seed, stream}, threads, level);
        }
        return from_estimate(r);
    }, py::arg("n"), py::arg("m"), py::arg("trials"), py::arg("seed"), py::arg("stream") = 0,
       py::arg("threads") = 1, py::arg("level") = 0.95);
    mod.def("fit_exponent", [](const std::vector<std::tuple<std::size_t, std::int64_t, double>>& pts) {
        std::vector<FitPoint> points;
        for (const auto& [n, m, p] : pts) points.push_back({n, m, p});
        const auto f = fit_exponent(points);
        py::dict d;
        d["c_hat"] = f.c_hat;
        d["intercept"] = f.intercept;
        d["residual"] = f.residual;
        d["points_used"] = f.points.size();
        return d;
    });

    mod.def("is_mds", [](const py::sequence& rows) {
        const auto v = is_mds(to_matrix(rows));
        py::dict d;
        d["is_mds"] = v.is_mds;
        d["witness"] = v.witness ? py::cast(*v.witness) : py::none();
        d["minors_checked"] = v.minors_checked;
        return d;
    });
    mod.def("generate_mds", [](std::size_t k, std::size_t n, std::int64_t m, std::uint64_t max_attempts,
                               std::uint64_t seed, std::uint64_t stream) {
        const auto r = generate_mds(k, n, m, max_attempts, Seed{seed, stream});
        py::dict d;
        d["matrix"] = from_matrix(r.matrix);
        d["attempts"] = r.attempts;
        d["m_used"] = r.m_used;
        return d;
    }, py::arg("k"), py::arg("n"), py::arg("m"), py::arg("max_attempts") = 1000, py::arg("seed") = 0,
       py::arg("stream") = 0);
    mod.def("pigeonhole_min_alphabet", &pigeonhole_min_alphabet);

    mod.def("F", &F_eval, py::arg("y"), py::arg("m"));
    mod.def("G", &G_eval, py::arg("y"), py::arg("eta") = kDefaultEta);
    mod.def("charfn_modulus", [](const std::vector<double>& x, double t, std::int64_t m) {
        return charfn_modulus(std::span<const double>(x), t, m);
    });
    mod.def("esseen_integral", [](const std::vector<double>& x, std::int64_t m, double eps) {
        return esseen_integral(std::span<const double>(x), m, eps);
    });
    mod.def("epsilon_zero", &epsilon_zero);
    mod.def("small_ball_probe", [](const std::vector<double>& x, std::int64_t m, double eps, std::uint64_t trials,
                                   std::uint64_t seed, std::uint64_t stream, unsigned threads) {
        const auto r = small_ball_probe(RealVector::from_doubles(x), m, eps, trials, Seed{seed, stream}, threads);
        py::dict d = from_estimate(r.mc);
        d["epsilon"] = r.epsilon;
        d["esseen_integral"] = r.esseen_integral;
        return d;
    }, py::arg("x"), py::arg("m"), py::arg("eps"), py::arg("trials"), py::arg("seed"), py::arg("stream") = 0,
       py::arg("threads") = 1);

    mod.def("is_compressible", [](const std::vector<double>& x, double alpha, double beta) {
        return is_compressible(normalize(RealVector::from_doubles(x)), LcdParams{alpha, beta});
    });
    mod.def("lcd_upper", [](const std::vector<double>& x, double alpha, double beta, double d_max, double step)
                -> std::optional<double> {
        const auto r = lcd_scan(normalize(RealVector::from_doubles(x)), LcdParams{alpha, beta}, Real(d_max), Real(step));
        if (!r.lcd_upper) return std::nullopt;
        return r.lcd_upper->to_double();
    });
    mod.def("normal_vector", [](const py::sequence& rows, std::int64_t m) {
        return normal_vector(to_matrix(rows), m).to_doubles();
    }, py::arg("rows"), py::arg("m") = 1);
}
