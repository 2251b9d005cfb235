#pragma once

#include <json.hpp>

#include "katolab/constants.hpp"
#include "katolab/equatorial.hpp"
#include "katolab/inequalities.hpp"
#include "katolab/numformat.hpp"
#include "katolab/search.hpp"
#include "katolab/tensor.hpp"

// JSON emission for every result type. Doubles are emitted as 17-digit
// decimal strings so downstream parsers cannot lose precision; integral
// fields stay native. Key order is fixed, making payloads byte-stable.
namespace katolab {

using ordered_json = nlohmann::ordered_json;

inline ordered_json witness_to_json(const Witness& w) {
    ordered_json j;
    ordered_json v = ordered_json::array();
    for (int row = 0; row < w.v.n(); ++row) {
        ordered_json r = ordered_json::array();
        for (int a = 0; a < w.v.d(); ++a) r.push_back(fmt17(w.v.at(row, a)));
        v.push_back(std::move(r));
    }
    j["v"] = std::move(v);
    ordered_json tri = ordered_json::array();
    for (int i = 0; i < w.w.n(); ++i)
        for (int k = i; k < w.w.n(); ++k) {
            ordered_json entry;
            entry["i"] = i;
            entry["j"] = k;
            ordered_json vals = ordered_json::array();
            for (int a = 0; a < w.w.d(); ++a) vals.push_back(fmt17(w.w.at(i, k, a)));
            entry["values"] = std::move(vals);
            tri.push_back(std::move(entry));
        }
    j["w_upper_triangle"] = std::move(tri);
    j["ratio"] = fmt17(w.ratio);
    j["constraint_residual_norm"] = fmt17(w.constraint_residual_norm);
    return j;
}

inline ordered_json estimate_to_json(const search::KatoEstimate& est) {
    ordered_json j;
    j["kappa_upper"] = fmt17(est.kappa_upper);
    j["lambda_best"] = fmt17(est.lambda_best);
    j["evaluations"] = est.evaluations;
    ordered_json cfg;
    cfg["restarts"] = est.config.restarts;
    cfg["seed"] = est.config.seed;
    cfg["refine_iters"] = est.config.refine_iters;
    cfg["refine_step"] = fmt17(est.config.refine_step);
    cfg["feas_tol"] = fmt17(est.config.feas_tol);
    cfg["conv_tol"] = fmt17(est.config.conv_tol);
    j["config"] = std::move(cfg);
    j["witness"] = witness_to_json(est.witness);
    return j;
}

inline ordered_json constants_row_to_json(const constants::ConstantsRow& row) {
    ordered_json j;
    j["p"] = fmt17(row.p);
    j["V_p"] = fmt17(row.V_p);
    j["C_HL"] = fmt17(row.C_HL);
    j["C_HL_simple"] = fmt17(row.C_HL_simple);
    j["C_P_scalar"] = fmt17(row.C_P_scalar);
    j["C_P"] = fmt17(row.C_P);
    j["alpha_star"] = fmt17(row.alpha_star);
    j["C_T"] = fmt17(row.C_T);
    j["C_ext"] = fmt17(row.C_ext);
    j["quadrature_error"] = fmt17(row.quadrature_error);
    j["trace_range_warning"] = row.trace_range_warning;
    return j;
}

inline ordered_json thresholds_to_json(const constants::Thresholds& t) {
    ordered_json j;
    j["p0"] = fmt17(t.p0);
    j["eps3"] = fmt17(t.eps3);
    j["p1"] = fmt17(t.p1);
    j["p1_rounded"] = fmt17(t.p1_rounded);
    return j;
}

inline ordered_json ineq_report_to_json(const ineq::IneqReport& r) {
    ordered_json j;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["worst_margin"] = fmt17(r.worst_margin);
    ordered_json w = ordered_json::array();
    for (double x : r.witness_of_worst) w.push_back(fmt17(x));
    j["witness_of_worst"] = std::move(w);
    return j;
}

inline ordered_json certificate_to_json(const equatorial::InstabilityCertificate& c) {
    ordered_json j;
    j["n"] = c.n;
    j["p"] = fmt17(c.p);
    j["eps"] = fmt17(c.eps);
    j["s"] = fmt17(c.s);
    j["mu"] = fmt17(c.mu);
    j["r0"] = fmt17(c.r0);
    j["integral_value"] = fmt17(c.integral_value);
    j["analytic_value"] = fmt17(c.analytic_value);
    j["quad_error"] = fmt17(c.quad_error);
    return j;
}

} // namespace katolab
