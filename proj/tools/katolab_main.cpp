#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "katolab/closed_forms.hpp"
#include "katolab/constants.hpp"
#include "katolab/equatorial.hpp"
#include "katolab/inequalities.hpp"
#include "katolab/numformat.hpp"
#include "katolab/search.hpp"
#include "katolab/serialize.hpp"
#include "katolab/tensor.hpp"

namespace {

constexpr const char* kToolVersion = "katolab 0.1.0";

// Exit codes are a stable contract: 0 success, 1 I/O or internal numeric
// failure, 2 usage, 3 inequality violation, 4 out-of-range model input.
enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsageError = 2,
    kViolation = 3,
    kOutOfRange = 4,
};

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::string started;
    std::string finished;
};

katolab::ordered_json manifest_json(const Manifest& m) {
    katolab::ordered_json j;
    j["command"] = m.command;
    katolab::ordered_json params;
    for (const auto& [k, v] : m.params) params[k] = v;
    j["params"] = std::move(params);
    j["seed"] = m.seed;
    j["tool_version"] = kToolVersion;
    j["started"] = m.started;
    j["finished"] = m.finished;
    return j;
}

// The numeric payload is fully deterministic per seed; timestamps live
// only inside the manifest block.
int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output path: " << out_path << "\n";
        return kIoError;
    }
    out << text;
    out.flush();
    if (!out.good()) {
        std::cerr << "error: write failed: " << out_path << "\n";
        return kIoError;
    }
    return kOk;
}

std::string manifest_csv_comment(const Manifest& m) {
    std::string s = "# tool: ";
    s += kToolVersion;
    s += "\n# command: " + m.command;
    for (const auto& [k, v] : m.params) s += "\n# param " + k + ": " + v;
    s += "\n# seed: " + std::to_string(m.seed);
    s += "\n# started: " + m.started;
    s += "\n# finished: " + m.finished;
    s += "\n";
    return s;
}

struct KappaArgs {
    double p = -1.0;
    double p_min = -1.0, p_max = -1.0;
    int p_steps = 0;
    int n = 0, d = 0;
    int restarts = 256;
    int refine_iters = 200;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
};

int run_kappa(const KappaArgs& args) {
    const bool single = args.p >= 0.0;
    const bool grid = args.p_steps > 0 || args.p_min >= 0.0 || args.p_max >= 0.0;
    if (single == grid) {
        std::cerr << "error: give either --p or the --p-min/--p-max/--p-steps triple\n";
        return kUsageError;
    }

    std::vector<double> ps;
    if (single) {
        ps.push_back(args.p);
    } else {
        if (args.p_steps < 1 || args.p_min < 1.0 || args.p_max < args.p_min) {
            std::cerr << "error: grid needs --p-min >= 1, --p-max >= --p-min, --p-steps >= 1\n";
            return kUsageError;
        }
        for (int i = 0; i < args.p_steps; ++i)
            ps.push_back(args.p_steps == 1
                             ? args.p_min
                             : args.p_min + (args.p_max - args.p_min) * i / (args.p_steps - 1));
    }

    katolab::search::SearchConfig config;
    config.restarts = args.restarts;
    config.seed = args.seed;
    config.refine_iters = args.refine_iters;

    Manifest manifest;
    manifest.command = "kappa";
    manifest.seed = args.seed;
    manifest.started = iso_utc_now();
    if (single) manifest.params.emplace_back("p", katolab::fmt17(args.p));
    else {
        manifest.params.emplace_back("p_min", katolab::fmt17(args.p_min));
        manifest.params.emplace_back("p_max", katolab::fmt17(args.p_max));
        manifest.params.emplace_back("p_steps", std::to_string(args.p_steps));
    }
    manifest.params.emplace_back("n", std::to_string(args.n));
    manifest.params.emplace_back("d", std::to_string(args.d));
    manifest.params.emplace_back("restarts", std::to_string(args.restarts));
    manifest.params.emplace_back("refine_iters", std::to_string(args.refine_iters));
    manifest.params.emplace_back("format", args.format);

    std::vector<std::pair<double, katolab::search::KatoEstimate>> results;
    try {
        if (single) {
            results.emplace_back(args.p,
                                 katolab::search::outer_search(katolab::Params(args.p, args.n, args.d), config));
        } else {
            results = katolab::search::kappa_curve(args.n, args.d, ps, config);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOutOfRange;
    }
    manifest.finished = iso_utc_now();

    if (args.format == "csv") {
        std::string text = manifest_csv_comment(manifest);
        text += "p,n,d,kappa_upper,lambda_best,evaluations,closed_form\n";
        for (const auto& [p, est] : results) {
            const auto closed = katolab::closed_forms::kappa_closed(katolab::Params(p, args.n, args.d));
            text += katolab::fmt17(p) + "," + std::to_string(args.n) + "," + std::to_string(args.d) +
                    "," + katolab::fmt17(est.kappa_upper) + "," + katolab::fmt17(est.lambda_best) +
                    "," + std::to_string(est.evaluations) + "," +
                    (closed ? katolab::fmt17(closed->value) : std::string()) + "\n";
        }
        return emit(text, args.out);
    }

    katolab::ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    katolab::ordered_json instances = katolab::ordered_json::array();
    for (const auto& [p, est] : results) {
        katolab::ordered_json inst;
        inst["p"] = katolab::fmt17(p);
        inst["n"] = args.n;
        inst["d"] = args.d;
        inst["estimate"] = katolab::estimate_to_json(est);
        const auto closed = katolab::closed_forms::kappa_closed(katolab::Params(p, args.n, args.d));
        if (closed) {
            inst["closed_form"] = katolab::fmt17(closed->value);
            inst["closed_form_source"] = katolab::closed_forms::source_name(closed->source);
        } else {
            inst["closed_form"] = nullptr;
        }
        instances.push_back(std::move(inst));
    }
    doc["result"]["instances"] = std::move(instances);
    return emit(doc.dump(2) + "\n", args.out);
}

struct ConstantsArgs {
    std::vector<double> ps;
    double p_min = -1.0, p_max = -1.0;
    int p_steps = 0;
    bool thresholds = false;
    std::string format = "json";
    std::string out;
};

int run_constants(const ConstantsArgs& args) {
    std::vector<double> ps = args.ps;
    if (args.p_steps > 0) {
        if (args.p_min <= 0.0 || args.p_max < args.p_min) {
            std::cerr << "error: grid needs --p-min > 0 and --p-max >= --p-min\n";
            return kUsageError;
        }
        for (int i = 0; i < args.p_steps; ++i)
            ps.push_back(args.p_steps == 1
                             ? args.p_min
                             : args.p_min + (args.p_max - args.p_min) * i / (args.p_steps - 1));
    }
    if (ps.empty() && !args.thresholds) {
        std::cerr << "error: nothing to do; give --p, a grid, or --thresholds\n";
        return kUsageError;
    }
    if (args.format == "csv" && args.thresholds && !ps.empty()) {
        std::cerr << "error: csv output cannot mix rows with --thresholds; use json\n";
        return kUsageError;
    }

    Manifest manifest;
    manifest.command = "constants";
    manifest.started = iso_utc_now();
    for (double p : ps) manifest.params.emplace_back("p", katolab::fmt17(p));
    if (args.thresholds) manifest.params.emplace_back("thresholds", "true");
    manifest.params.emplace_back("format", args.format);

    struct RowOrError {
        double p;
        std::optional<katolab::constants::ConstantsRow> row;
        std::string error;
    };
    std::vector<RowOrError> rows;
    bool warned = false;
    for (double p : ps) {
        RowOrError r{p, std::nullopt, {}};
        try {
            r.row = katolab::constants::constants_row(p);
            if (r.row->trace_range_warning) {
                std::cerr << "warning: p=" << katolab::fmt17(p)
                          << " lies outside [2,3]; trace-chain fields extrapolate the stated range\n";
                warned = true;
            }
        } catch (const std::domain_error& e) {
            r.error = e.what();
            std::cerr << "warning: p=" << katolab::fmt17(p) << ": " << e.what() << "\n";
            warned = true;
        }
        rows.push_back(std::move(r));
    }
    (void)warned;
    std::optional<katolab::constants::Thresholds> thresholds;
    if (args.thresholds) thresholds = katolab::constants::thresholds();
    manifest.finished = iso_utc_now();

    if (args.format == "csv") {
        std::string text = manifest_csv_comment(manifest);
        text += "p,V_p,C_HL,C_HL_simple,C_P_scalar,C_P,alpha_star,C_T,C_ext,quadrature_error,"
                "trace_range_warning,error\n";
        for (const RowOrError& r : rows) {
            if (r.row) {
                const auto& row = *r.row;
                text += katolab::fmt17(row.p) + "," + katolab::fmt17(row.V_p) + "," +
                        katolab::fmt17(row.C_HL) + "," + katolab::fmt17(row.C_HL_simple) + "," +
                        katolab::fmt17(row.C_P_scalar) + "," + katolab::fmt17(row.C_P) + "," +
                        katolab::fmt17(row.alpha_star) + "," + katolab::fmt17(row.C_T) + "," +
                        katolab::fmt17(row.C_ext) + "," + katolab::fmt17(row.quadrature_error) +
                        "," + (row.trace_range_warning ? "true" : "false") + ",\n";
            } else {
                text += katolab::fmt17(r.p) + ",,,,,,,,,,,\"" + r.error + "\"\n";
            }
        }
        return emit(text, args.out);
    }

    katolab::ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    if (!rows.empty()) {
        katolab::ordered_json jrows = katolab::ordered_json::array();
        for (const RowOrError& r : rows) {
            if (r.row) {
                jrows.push_back(katolab::constants_row_to_json(*r.row));
            } else {
                katolab::ordered_json bad;
                bad["p"] = katolab::fmt17(r.p);
                bad["error"] = r.error;
                jrows.push_back(std::move(bad));
            }
        }
        doc["result"]["rows"] = std::move(jrows);
    }
    if (thresholds) doc["result"]["thresholds"] = katolab::thresholds_to_json(*thresholds);
    return emit(doc.dump(2) + "\n", args.out);
}

struct VerifyArgs {
    long long samples = 1000000;
    std::uint64_t seed = 0;
    std::string which = "all";
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    if (args.samples < 1) {
        std::cerr << "error: --samples must be positive\n";
        return kUsageError;
    }
    const bool want_mixed = args.which == "mixed" || args.which == "all";
    const bool want_kato2d = args.which == "kato2d" || args.which == "all";
    const bool want_example = args.which == "example63" || args.which == "all";
    if (!want_mixed && !want_kato2d && !want_example) {
        std::cerr << "error: --which must be one of mixed, kato2d, example63, all\n";
        return kUsageError;
    }

    Manifest manifest;
    manifest.command = "verify";
    manifest.seed = args.seed;
    manifest.started = iso_utc_now();
    manifest.params.emplace_back("samples", std::to_string(args.samples));
    manifest.params.emplace_back("which", args.which);

    katolab::ordered_json result;
    long long violations = 0;
    if (want_mixed) {
        const auto report = katolab::ineq::fuzz_mixed(args.samples, args.seed);
        violations += report.violations;
        result["mixed"] = katolab::ineq_report_to_json(report);
    }
    if (want_kato2d) {
        const auto case1 = katolab::ineq::fuzz_case1(args.samples, args.seed);
        const auto case2 = katolab::ineq::fuzz_case2(args.samples, args.seed);
        violations += case1.violations + case2.violations;
        result["kato2d_case1"] = katolab::ineq_report_to_json(case1);
        result["kato2d_case2"] = katolab::ineq_report_to_json(case2);
    }
    if (want_example) {
        const katolab::Witness w = katolab::closed_forms::gap_certificate_63();
        katolab::ordered_json ex;
        ex["ratio"] = katolab::fmt17(w.ratio);
        ex["kappa_bound"] = katolab::fmt17(1.0 / w.ratio);
        ex["constraint_residual_norm"] = katolab::fmt17(w.constraint_residual_norm);
        result["example63"] = std::move(ex);
    }
    manifest.finished = iso_utc_now();

    katolab::ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["result"] = std::move(result);
    const int emitted = emit(doc.dump(2) + "\n", args.out);
    if (emitted != kOk) return emitted;
    return violations > 0 ? kViolation : kOk;
}

struct EquatorialArgs {
    int n = 0;
    double p = 0.0;
    double eps = 0.0;
    bool eps_set = false;
    double tol = 1e-12;
    std::string emit_eta;
    std::string format = "json";
    std::string out;
};

int run_equatorial(const EquatorialArgs& args) {
    Manifest manifest;
    manifest.command = "equatorial";
    manifest.started = iso_utc_now();
    manifest.params.emplace_back("n", std::to_string(args.n));
    manifest.params.emplace_back("p", katolab::fmt17(args.p));
    if (args.eps_set) manifest.params.emplace_back("eps", katolab::fmt17(args.eps));
    manifest.params.emplace_back("tol", katolab::fmt17(args.tol));

    katolab::equatorial::InstabilityCertificate cert;
    try {
        std::optional<double> eps;
        if (args.eps_set) eps = args.eps;
        cert = katolab::equatorial::build_certificate(args.n, args.p, eps, args.tol);
    } catch (const std::domain_error& e) {
        const auto [lo, hi] = katolab::equatorial::instability_range(std::max(args.n, 2));
        std::cerr << "error: " << e.what() << "\n";
        if (args.n >= 2)
            std::cerr << "valid range for n=" << args.n << ": p in (" << katolab::fmt17(lo) << ", "
                      << katolab::fmt17(hi) << ")\n";
        return kOutOfRange;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOutOfRange;
    }
    manifest.finished = iso_utc_now();

    if (!args.emit_eta.empty()) {
        // 257 log-spaced radii from r0 to 1, ascending.
        std::string csv = "r,eta\n";
        const double t0 = std::log(cert.r0);
        for (int i = 0; i <= 256; ++i) {
            const double t = t0 * (1.0 - i / 256.0);
            const double r = std::exp(t);
            csv += katolab::fmt17(r) + "," + katolab::fmt17(katolab::equatorial::eta(cert, r)) + "\n";
        }
        const int rc = emit(csv, args.emit_eta);
        if (rc != kOk) return rc;
    }

    katolab::ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["result"]["certificate"] = katolab::certificate_to_json(cert);
    doc["result"]["ode_residual_64"] = katolab::fmt17(katolab::equatorial::ode_residual(cert, 64));
    return emit(doc.dump(2) + "\n", args.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for optimal Kato constants and regularity thresholds"};
    app.require_subcommand(1);

    KappaArgs kappa;
    CLI::App* cmd_kappa = app.add_subcommand("kappa", "estimate kappa(p, n, d) by multistart search");
    cmd_kappa->add_option("--p", kappa.p, "single exponent p");
    cmd_kappa->add_option("--p-min", kappa.p_min, "grid start");
    cmd_kappa->add_option("--p-max", kappa.p_max, "grid end");
    cmd_kappa->add_option("--p-steps", kappa.p_steps, "grid point count");
    cmd_kappa->add_option("--n", kappa.n, "domain dimension")->required();
    cmd_kappa->add_option("--d", kappa.d, "target dimension")->required();
    cmd_kappa->add_option("--restarts", kappa.restarts, "multistart count (default 256)");
    cmd_kappa->add_option("--refine-iters", kappa.refine_iters, "refinement sweep budget");
    cmd_kappa->add_option("--seed", kappa.seed, "random seed");
    cmd_kappa->add_option("--format", kappa.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_kappa->add_option("--out", kappa.out, "output path (default stdout)");

    ConstantsArgs constants;
    CLI::App* cmd_constants =
        app.add_subcommand("constants", "evaluate the extension/trace constant chain");
    cmd_constants->add_option("--p", constants.ps, "exponent p (repeatable)");
    cmd_constants->add_option("--p-min", constants.p_min, "grid start");
    cmd_constants->add_option("--p-max", constants.p_max, "grid end");
    cmd_constants->add_option("--p-steps", constants.p_steps, "grid point count");
    cmd_constants->add_flag("--thresholds", constants.thresholds,
                            "emit the regularity interval endpoints");
    cmd_constants->add_option("--format", constants.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_constants->add_option("--out", constants.out, "output path (default stdout)");

    VerifyArgs verify;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "fuzz the pointwise inequalities and check the gap witness");
    cmd_verify->add_option("--samples", verify.samples, "samples per inequality (default 1e6)");
    cmd_verify->add_option("--seed", verify.seed, "random seed");
    cmd_verify->add_option("--which", verify.which, "mixed, kato2d, example63, or all")
        ->check(CLI::IsMember({"mixed", "kato2d", "example63", "all"}));
    cmd_verify->add_option("--format", verify.format, "json")->check(CLI::IsMember({"json"}));
    cmd_verify->add_option("--out", verify.out, "output path (default stdout)");

    EquatorialArgs equatorial;
    CLI::App* cmd_equatorial =
        app.add_subcommand("equatorial", "instability certificate for the equatorial map");
    cmd_equatorial->add_option("--n", equatorial.n, "domain dimension")->required();
    cmd_equatorial->add_option("--p", equatorial.p, "exponent p")->required();
    cmd_equatorial->add_option("--eps", equatorial.eps, "slack parameter (default: half the available)");
    cmd_equatorial->add_option("--tol", equatorial.tol, "quadrature tolerance");
    cmd_equatorial->add_option("--emit-eta", equatorial.emit_eta, "write eta(r) samples to this CSV");
    cmd_equatorial->add_option("--format", equatorial.format, "json")->check(CLI::IsMember({"json"}));
    cmd_equatorial->add_option("--out", equatorial.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }
    equatorial.eps_set = cmd_equatorial->count("--eps") > 0;

    try {
        if (cmd_kappa->parsed()) return run_kappa(kappa);
        if (cmd_constants->parsed()) return run_constants(constants);
        if (cmd_verify->parsed()) return run_verify(verify);
        if (cmd_equatorial->parsed()) return run_equatorial(equatorial);
        std::cerr << "error: no subcommand\n";
        return kUsageError;
    } catch (const katolab::feasibility_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOutOfRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
}
