#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "katolab/closed_forms.hpp"
#include "katolab/constants.hpp"
#include "katolab/equatorial.hpp"
#include "katolab/inequalities.hpp"
#include "katolab/search.hpp"
#include "katolab/tensor.hpp"

namespace py = pybind11;

namespace {

using Grid = std::vector<std::vector<double>>;
using Cube = std::vector<std::vector<std::vector<double>>>;

katolab::GradientDirection v_from_list(const Grid& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw std::invalid_argument("v must be a nonempty list of rows");
    const int d = static_cast<int>(rows[0].size());
    if (d == 0) throw std::invalid_argument("v rows must be nonempty");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * d);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != d)
            throw std::invalid_argument("v rows must share one length");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return katolab::GradientDirection(n, d, std::move(flat));
}

katolab::HessianCandidate w_from_list(const Cube& entries) {
    const int n = static_cast<int>(entries.size());
    if (n == 0) throw std::invalid_argument("w must be a nonempty n x n x d nest");
    if (static_cast<int>(entries[0].size()) != n)
        throw std::invalid_argument("w must be square in its first two indices");
    const int d = static_cast<int>(entries[0][0].size());
    katolab::HessianCandidate w(n, d);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(entries[i].size()) != n)
            throw std::invalid_argument("w must be square in its first two indices");
        for (int j = i; j < n; ++j) {
            if (static_cast<int>(entries[i][j].size()) != d)
                throw std::invalid_argument("w slices must share one length");
            for (int a = 0; a < d; ++a) w.set(i, j, a, entries[i][j][a]);
        }
    }
    return w;
}

Grid v_to_list(const katolab::GradientDirection& v) {
    Grid out(v.n(), std::vector<double>(v.d()));
    for (int j = 0; j < v.n(); ++j)
        for (int a = 0; a < v.d(); ++a) out[j][a] = v.at(j, a);
    return out;
}

Cube w_to_list(const katolab::HessianCandidate& w) {
    Cube out(w.n(), Grid(w.n(), std::vector<double>(w.d())));
    for (int i = 0; i < w.n(); ++i)
        for (int j = 0; j < w.n(); ++j)
            for (int a = 0; a < w.d(); ++a) out[i][j][a] = w.at(i, j, a);
    return out;
}

py::dict witness_dict(const katolab::Witness& w) {
    py::dict out;
    out["v"] = v_to_list(w.v);
    out["w"] = w_to_list(w.w);
    out["ratio"] = w.ratio;
    out["constraint_residual_norm"] = w.constraint_residual_norm;
    return out;
}

py::dict estimate_dict(const katolab::search::KatoEstimate& est) {
    py::dict out;
    out["kappa_upper"] = est.kappa_upper;
    out["lambda_best"] = est.lambda_best;
    out["evaluations"] = est.evaluations;
    out["witness"] = witness_dict(est.witness);
    return out;
}

py::dict report_dict(const katolab::ineq::IneqReport& r) {
    py::dict out;
    out["samples"] = r.samples;
    out["violations"] = r.violations;
    out["worst_margin"] = r.worst_margin;
    out["witness_of_worst"] =
        std::vector<double>(r.witness_of_worst.begin(), r.witness_of_worst.end());
    return out;
}

py::dict row_dict(const katolab::constants::ConstantsRow& row) {
    py::dict out;
    out["p"] = row.p;
    out["V_p"] = row.V_p;
    out["C_HL"] = row.C_HL;
    out["C_HL_simple"] = row.C_HL_simple;
    out["C_P_scalar"] = row.C_P_scalar;
    out["C_P"] = row.C_P;
    out["alpha_star"] = row.alpha_star;
    out["C_T"] = row.C_T;
    out["C_ext"] = row.C_ext;
    out["quadrature_error"] = row.quadrature_error;
    out["trace_range_warning"] = row.trace_range_warning;
    return out;
}

py::dict certificate_dict(const katolab::equatorial::InstabilityCertificate& c) {
    py::dict out;
    out["n"] = c.n;
    out["p"] = c.p;
    out["eps"] = c.eps;
    out["s"] = c.s;
    out["mu"] = c.mu;
    out["r0"] = c.r0;
    out["integral_value"] = c.integral_value;
    out["analytic_value"] = c.analytic_value;
    out["quad_error"] = c.quad_error;
    return out;
}

katolab::search::SearchConfig make_config(int restarts, std::uint64_t seed, int refine_iters) {
    katolab::search::SearchConfig config;
    config.restarts = restarts;
    config.seed = seed;
    config.refine_iters = refine_iters;
    return config;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "optimal Kato constants, regularity thresholds, and instability certificates";

    m.def(
        "kappa_closed",
        [](double p, int n, int d) -> py::object {
            const auto r = katolab::closed_forms::kappa_closed(katolab::Params(p, n, d));
            if (!r) return py::none();
            py::dict out;
            out["value"] = r->value;
            out["source"] = katolab::closed_forms::source_name(r->source);
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("d"));

    m.def("critical_exponent", &katolab::closed_forms::critical_exponent, py::arg("n"));

    m.def("gap_certificate",
          []() { return witness_dict(katolab::closed_forms::gap_certificate_63()); });

    m.def(
        "constraint_residual",
        [](const Grid& v, const Cube& w, double p) {
            return katolab::constraint_residual(v_from_list(v), w_from_list(w), p);
        },
        py::arg("v"), py::arg("w"), py::arg("p"));

    m.def(
        "kato_objective",
        [](const Grid& v, const Cube& w) {
            return katolab::kato_objective(v_from_list(v), w_from_list(w));
        },
        py::arg("v"), py::arg("w"));

    m.def(
        "make_witness",
        [](const Grid& v, const Cube& w, double p, double tol) {
            return witness_dict(katolab::make_witness(v_from_list(v), w_from_list(w), p, tol));
        },
        py::arg("v"), py::arg("w"), py::arg("p"), py::arg("tol") = 1e-9);

    m.def(
        "inner_max",
        [](const Grid& v, double p) {
            const auto dir = v_from_list(v);
            const katolab::Params params(p, dir.n(), dir.d());
            const auto r = katolab::search::inner_max(dir, params);
            py::dict out;
            out["lambda"] = r.lambda;
            out["w"] = w_to_list(r.w_star);
            return out;
        },
        py::arg("v"), py::arg("p"));

    m.def(
        "project_feasible",
        [](const Grid& v, double p, const Cube& w) {
            return w_to_list(katolab::search::project_feasible(v_from_list(v), p, w_from_list(w)));
        },
        py::arg("v"), py::arg("p"), py::arg("w"));

    m.def(
        "outer_search",
        [](double p, int n, int d, int restarts, std::uint64_t seed, int refine_iters) {
            return estimate_dict(katolab::search::outer_search(
                katolab::Params(p, n, d), make_config(restarts, seed, refine_iters)));
        },
        py::arg("p"), py::arg("n"), py::arg("d"), py::arg("restarts") = 256,
        py::arg("seed") = 0, py::arg("refine_iters") = 200);

    m.def(
        "kappa_curve",
        [](int n, int d, const std::vector<double>& ps, int restarts, std::uint64_t seed,
           int refine_iters) {
            const auto curve =
                katolab::search::kappa_curve(n, d, ps, make_config(restarts, seed, refine_iters));
            py::list out;
            for (const auto& [p, est] : curve) {
                py::dict item;
                item["p"] = p;
                item["estimate"] = estimate_dict(est);
                out.append(item);
            }
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("ps"), py::arg("restarts") = 256,
        py::arg("seed") = 0, py::arg("refine_iters") = 200);

    m.def("v_p", &katolab::constants::v_p, py::arg("p"), py::arg("tol") = 1e-13);
    m.def("trace_constant", &katolab::constants::trace_constant, py::arg("p"), py::arg("alpha"));
    m.def("alpha_star", &katolab::constants::alpha_star, py::arg("p"));
    m.def(
        "constants_row",
        [](double p) { return row_dict(katolab::constants::constants_row(p)); }, py::arg("p"));
    m.def("thresholds", []() {
        const auto t = katolab::constants::thresholds();
        py::dict out;
        out["p0"] = t.p0;
        out["eps3"] = t.eps3;
        out["p1"] = t.p1;
        out["p1_rounded"] = t.p1_rounded;
        return out;
    });
    m.def("coefficients", [](double p) {
        const auto c = katolab::constants::coefficients(p);
        return py::make_tuple(c.first, c.second);
    }, py::arg("p"));
    m.def(
        "regularity_window",
        [](double p) {
            return std::string(
                katolab::constants::window_name(katolab::constants::regularity_window(p)));
        },
        py::arg("p"));
    m.def("projection_factor_check", &katolab::constants::projection_factor_check,
          py::arg("a_norm"), py::arg("samples") = 10000, py::arg("seed") = 0);
    m.def("ball_integral_check", &katolab::constants::ball_integral_check, py::arg("p"),
          py::arg("tol") = 1e-10);

    m.def("mixed_csk_margin", &katolab::ineq::mixed_csk_margin, py::arg("x"), py::arg("y"),
          py::arg("theta1"), py::arg("theta2"), py::arg("p"));
    m.def("mixed_csk_discriminant", &katolab::ineq::mixed_csk_discriminant, py::arg("theta1"),
          py::arg("theta2"), py::arg("p"));
    m.def("kato2d_margin_case1", &katolab::ineq::kato2d_margin_case1, py::arg("z"), py::arg("w"),
          py::arg("alpha1"), py::arg("alpha2"), py::arg("p"));
    m.def("kato2d_margin_case2", &katolab::ineq::kato2d_margin_case2, py::arg("z"), py::arg("w"),
          py::arg("alpha1"), py::arg("alpha2"), py::arg("p"));
    m.def("csk_vs_separate", [](double p) {
        const auto r = katolab::ineq::csk_vs_separate(p);
        return py::make_tuple(r.first, r.second);
    }, py::arg("p"));
    m.def(
        "fuzz_mixed",
        [](long long samples, std::uint64_t seed) {
            return report_dict(katolab::ineq::fuzz_mixed(samples, seed));
        },
        py::arg("samples"), py::arg("seed") = 0);
    m.def(
        "fuzz_case1",
        [](long long samples, std::uint64_t seed) {
            return report_dict(katolab::ineq::fuzz_case1(samples, seed));
        },
        py::arg("samples"), py::arg("seed") = 0);
    m.def(
        "fuzz_case2",
        [](long long samples, std::uint64_t seed) {
            return report_dict(katolab::ineq::fuzz_case2(samples, seed));
        },
        py::arg("samples"), py::arg("seed") = 0);
    m.def("find_mixed_near_equality", &katolab::ineq::find_mixed_near_equality, py::arg("p"),
          py::arg("seed") = 0);

    m.def("instability_range", [](int n) {
        const auto r = katolab::equatorial::instability_range(n);
        return py::make_tuple(r.first, r.second);
    }, py::arg("n"));
    m.def(
        "build_certificate",
        [](int n, double p, py::object eps, double tol) {
            std::optional<double> e;
            if (!eps.is_none()) e = eps.cast<double>();
            return certificate_dict(katolab::equatorial::build_certificate(n, p, e, tol));
        },
        py::arg("n"), py::arg("p"), py::arg("eps") = py::none(), py::arg("tol") = 1e-12);
    m.def(
        "ode_residual",
        [](int n, double p, py::object eps, int m_points) {
            std::optional<double> e;
            if (!eps.is_none()) e = eps.cast<double>();
            const auto cert = katolab::equatorial::build_certificate(n, p, e, 1e-12);
            return katolab::equatorial::ode_residual(cert, m_points);
        },
        py::arg("n"), py::arg("p"), py::arg("eps") = py::none(), py::arg("m_points") = 64);
    m.def(
        "eta",
        [](int n, double p, py::object eps, double r) {
            std::optional<double> e;
            if (!eps.is_none()) e = eps.cast<double>();
            const auto cert = katolab::equatorial::build_certificate(n, p, e, 1e-12);
            return katolab::equatorial::eta(cert, r);
        },
        py::arg("n"), py::arg("p"), py::arg("eps"), py::arg("r"));
}
