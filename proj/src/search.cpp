#include "katolab/search.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "katolab/rng.hpp"

namespace katolab::search {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

void check_config(const SearchConfig& c) {
    if (c.restarts < 1) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (c.refine_iters < 1) throw std::invalid_argument("SearchConfig: refine_iters must be >= 1");
    if (!(c.refine_step > 0.0) || !(c.feas_tol > 0.0) || !(c.conv_tol > 0.0))
        throw std::invalid_argument("SearchConfig: steps and tolerances must be positive");
}

// Flat coordinates enumerate the upper triangle (k <= l) times the
// target index b; off-diagonal coordinates carry weight sqrt(2) so the
// flat Euclidean norm equals the tensor Frobenius norm.
struct FlatProblem {
    Eigen::MatrixXd A; // d x D constraint matrix
    Eigen::MatrixXd G; // n x D objective rows
};

FlatProblem build_flat(const GradientDirection& v, double p) {
    const int n = v.n(), d = v.d();
    const int D = n * (n + 1) / 2 * d;
    FlatProblem fp;
    fp.A = Eigen::MatrixXd::Zero(d, D);
    fp.G = Eigen::MatrixXd::Zero(n, D);
    int tri = 0;
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l, ++tri) {
            for (int b = 0; b < d; ++b) {
                const int col = tri * d + b;
                if (k == l) {
                    fp.G(k, col) = v.at(k, b);
                    for (int a = 0; a < d; ++a)
                        fp.A(a, col) = (a == b ? 1.0 : 0.0) + (p - 2.0) * v.at(k, a) * v.at(k, b);
                } else {
                    fp.G(k, col) = v.at(l, b) / kSqrt2;
                    fp.G(l, col) = v.at(k, b) / kSqrt2;
                    for (int a = 0; a < d; ++a)
                        fp.A(a, col) = (p - 2.0) *
                                       (v.at(k, a) * v.at(l, b) + v.at(l, a) * v.at(k, b)) / kSqrt2;
                }
            }
        }
    }
    return fp;
}

HessianCandidate unflatten(const Eigen::VectorXd& c, int n, int d) {
    HessianCandidate w(n, d);
    int tri = 0;
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l, ++tri)
            for (int b = 0; b < d; ++b)
                w.set(k, l, b, k == l ? c(tri * d + b) : c(tri * d + b) / kSqrt2);
    return w;
}

double frobenius_inner(const HessianCandidate& x, const HessianCandidate& y) {
    double s = 0.0;
    for (int i = 0; i < x.n(); ++i)
        for (int j = i; j < x.n(); ++j) {
            const double mult = (i == j) ? 1.0 : 2.0;
            for (int a = 0; a < x.d(); ++a) s += mult * x.at(i, j, a) * y.at(i, j, a);
        }
    return s;
}

} // namespace

InnerResult inner_max(const GradientDirection& v, const Params& params, double feas_tol) {
    if (v.n() != params.n || v.d() != params.d)
        throw std::invalid_argument("inner_max: direction shape does not match params");
    const int n = params.n, d = params.d;
    const int D = n * (n + 1) / 2 * d;

    const FlatProblem fp = build_flat(v, params.p);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fp.A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh =
        sv.size() > 0 ? sv(0) * std::max(D, d) * std::numeric_limits<double>::epsilon() : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    const int m = D - rank;
    if (m <= 0)
        throw std::domain_error("inner_max: the constraint null space is trivial, no feasible "
                                "unit candidate exists");

    const Eigen::MatrixXd B = svd.matrixV().rightCols(m);
    const Eigen::MatrixXd GB = fp.G * B;
    const Eigen::MatrixXd M = GB.transpose() * GB;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("inner_max: symmetric eigensolver failed to converge (n=" +
                                 std::to_string(n) + ", d=" + std::to_string(d) + ")");

    const double lambda = es.eigenvalues()(m - 1);
    const Eigen::VectorXd flat = B * es.eigenvectors().col(m - 1);
    HessianCandidate w = unflatten(flat, n, d);

    const double residual = constraint_residual_norm(v, w, params.p);
    if (!(residual <= feas_tol))
        throw std::runtime_error("inner_max: back-mapped eigenvector violates feasibility "
                                 "(residual " + std::to_string(residual) + ")");
    return InnerResult{lambda, std::move(w)};
}

HessianCandidate project_feasible(const GradientDirection& v, double p,
                                  const HessianCandidate& w) {
    if (v.n() != w.n() || v.d() != w.d())
        throw std::invalid_argument("project_feasible: shape mismatch");
    const int n = v.n(), d = v.d();

    // Riesz representers of the d constraint functionals under the
    // Frobenius inner product.
    std::vector<HessianCandidate> reps;
    reps.reserve(d);
    for (int a = 0; a < d; ++a) {
        HessianCandidate na(n, d);
        for (int k = 0; k < n; ++k)
            for (int l = k; l < n; ++l)
                for (int b = 0; b < d; ++b) {
                    double val = (p - 2.0) * 0.5 * (v.at(k, a) * v.at(l, b) + v.at(l, a) * v.at(k, b));
                    if (k == l && a == b) val += 1.0;
                    na.set(k, l, b, val);
                }
        reps.push_back(std::move(na));
    }

    Eigen::MatrixXd gram(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            gram(a, b) = frobenius_inner(reps[a], reps[b]);
            gram(b, a) = gram(a, b);
        }
    const std::vector<double> res = constraint_residual(v, w, p);
    Eigen::VectorXd rhs(d);
    for (int a = 0; a < d; ++a) rhs(a) = res[a];

    // Minimal-norm solve tolerates rank-deficient constraint systems.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
    const Eigen::VectorXd coef = cod.solve(rhs);

    HessianCandidate out(n, d);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            for (int b = 0; b < d; ++b) {
                double val = w.at(k, l, b);
                for (int a = 0; a < d; ++a) val -= coef(a) * reps[a].at(k, l, b);
                out.set(k, l, b, val);
            }
    return out;
}

namespace {

struct Candidate {
    double lambda = -std::numeric_limits<double>::infinity();
    long long origin = 0; // restart index; warm starts use negative values
    std::vector<double> v_entries;
};

GradientDirection random_direction(int n, int d, Rng& rng) {
    std::vector<double> entries(static_cast<std::size_t>(n) * d);
    for (double& e : entries) e = rng.normal();
    // A zero draw has vanishing probability but a deterministic fallback
    // keeps the contract total.
    double s = 0.0;
    for (double e : entries) s += e * e;
    if (!(s > 0.0)) entries[0] = 1.0;
    return GradientDirection(n, d, std::move(entries));
}

double evaluate(const std::vector<double>& entries, const Params& params, double feas_tol) {
    return inner_max(GradientDirection(params.n, params.d, entries), params, feas_tol).lambda;
}

// Steepest-of-sweep compass ascent on the unit sphere of directions:
// probe +/- step along every coordinate (renormalizing), move to the
// best improvement, halve the step when a sweep stalls.
Candidate refine(Candidate cand, const Params& params, const SearchConfig& config,
                 long long& evaluations) {
    const int nd = params.n * params.d;
    double step = config.refine_step;
    double f = cand.lambda;
    std::vector<double> v = cand.v_entries;

    for (int it = 0; it < config.refine_iters && step > 1e-8; ++it) {
        double best_f = f;
        std::vector<double> best_v;
        for (int c = 0; c < nd; ++c) {
            for (const double sgn : {1.0, -1.0}) {
                std::vector<double> probe = v;
                probe[c] += sgn * step;
                const GradientDirection dir(params.n, params.d, probe);
                const double fl = inner_max(dir, params, config.feas_tol).lambda;
                ++evaluations;
                if (fl > best_f + 1e-15 * (1.0 + std::abs(best_f))) {
                    best_f = fl;
                    best_v = dir.entries();
                }
            }
        }
        if (!best_v.empty()) {
            v = std::move(best_v);
            f = best_f;
        } else {
            step *= 0.5;
        }
    }
    cand.lambda = f;
    cand.v_entries = std::move(v);
    return cand;
}

KatoEstimate outer_search_impl(const Params& params, const SearchConfig& config,
                               const std::vector<std::vector<double>>& warm_starts) {
    check_config(config);
    long long evaluations = 0;

    // Warm starts are graded ahead of every restart in the tie order.
    std::vector<Candidate> pool;
    pool.reserve(warm_starts.size() + config.restarts);
    for (std::size_t i = 0; i < warm_starts.size(); ++i) {
        const GradientDirection dir(params.n, params.d, warm_starts[i]);
        Candidate c;
        c.origin = -static_cast<long long>(warm_starts.size() - i);
        c.v_entries = dir.entries();
        pool.push_back(std::move(c));
    }
    for (int r = 0; r < config.restarts; ++r) {
        Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(r));
        Candidate c;
        c.origin = r;
        c.v_entries = random_direction(params.n, params.d, rng).entries();
        pool.push_back(std::move(c));
    }

    // Evaluate the pool; restarts are independent, so any worker split
    // produces the same numbers.
    const int workers = std::min<int>(thread_budget(), static_cast<int>(pool.size()));
    if (workers <= 1) {
        for (Candidate& c : pool) c.lambda = evaluate(c.v_entries, params, config.feas_tol);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            threads.emplace_back([&, t]() {
                try {
                    for (std::size_t i = t; i < pool.size(); i += workers)
                        pool[i].lambda = evaluate(pool[i].v_entries, params, config.feas_tol);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (std::thread& th : threads) th.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }
    evaluations += static_cast<long long>(pool.size());

    // Keep the best few starts for local refinement; order by value,
    // breaking ties toward the earliest origin.
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        return a.origin < b.origin;
    });
    const std::size_t keep = std::min<std::size_t>(4, pool.size());
    std::vector<Candidate> refined;
    refined.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        refined.push_back(refine(pool[i], params, config, evaluations));

    // Deterministic reduction: maximum lambda, ties within conv_tol go to
    // the lowest origin index.
    double lambda_max = -std::numeric_limits<double>::infinity();
    for (const Candidate& c : refined) lambda_max = std::max(lambda_max, c.lambda);
    const Candidate* best = nullptr;
    for (const Candidate& c : refined)
        if (c.lambda >= lambda_max - config.conv_tol && (!best || c.origin < best->origin))
            best = &c;

    const GradientDirection v_best(params.n, params.d, best->v_entries);
    const InnerResult final_inner = inner_max(v_best, params, config.feas_tol);
    ++evaluations;

    KatoEstimate est{
        1.0 / final_inner.lambda,
        final_inner.lambda,
        make_witness(v_best, final_inner.w_star, params.p, config.feas_tol),
        evaluations,
        config,
    };
    return est;
}

} // namespace

KatoEstimate outer_search(const Params& params, const SearchConfig& config) {
    return outer_search_impl(params, config, {});
}

std::vector<std::pair<double, KatoEstimate>> kappa_curve(int n, int d,
                                                         const std::vector<double>& p_grid,
                                                         const SearchConfig& config) {
    if (p_grid.empty()) throw std::invalid_argument("kappa_curve: grid must be nonempty");
    for (double p : p_grid)
        if (!(p >= 1.0)) throw std::invalid_argument("kappa_curve: every p must be >= 1");

    std::vector<std::pair<double, KatoEstimate>> out;
    out.reserve(p_grid.size());
    std::vector<std::vector<double>> warm;
    for (double p : p_grid) {
        KatoEstimate est = outer_search_impl(Params(p, n, d), config, warm);
        warm = {est.witness.v.entries()};
        out.emplace_back(p, std::move(est));
    }
    return out;
}

int thread_budget() {
    const unsigned hw = std::thread::hardware_concurrency();
    int fallback = hw > 0 ? static_cast<int>(std::min(hw, 16u)) : 1;
    const char* env = std::getenv("KATOLAB_THREADS");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) return fallback;
    return static_cast<int>(std::min(parsed, 64L));
}

} // namespace katolab::search
