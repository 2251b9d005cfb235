#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "katolab/tensor.hpp"

namespace katolab::search {

struct SearchConfig {
    int restarts = 256;
    std::uint64_t seed = 0;
    int refine_iters = 200;     // compass sweeps per refined candidate
    double refine_step = 0.1;   // initial tangent step, halved on stall
    double feas_tol = 1e-9;
    double conv_tol = 1e-10;    // tie window for the deterministic reduction
};

struct InnerResult {
    double lambda;
    HessianCandidate w_star;
};

// Exact maximization of the objective over unit feasible w for fixed v:
// symmetric candidates are flattened with sqrt(2)-weighted off-diagonal
// coordinates (flat norm = Frobenius norm), an orthonormal basis of the
// constraint null space comes from a rank-revealing SVD, and the top
// eigenpair of the projected quadratic form is returned.
InnerResult inner_max(const GradientDirection& v, const Params& params, double feas_tol = 1e-9);

// Orthogonal projection onto the feasibility subspace, computed in
// tensor space from the constraint representers (a route independent of
// the flattened eigenproblem above).
HessianCandidate project_feasible(const GradientDirection& v, double p,
                                  const HessianCandidate& w);

struct KatoEstimate {
    double kappa_upper;
    double lambda_best;
    Witness witness;
    long long evaluations; // total inner maximizations performed
    SearchConfig config;
};

// Multistart over unit v (normalized Gaussian), exact inner solve per
// start, derivative-free sphere-constrained refinement of the best
// candidates. Deterministic for a fixed seed regardless of scheduling.
KatoEstimate outer_search(const Params& params, const SearchConfig& config);

// One estimate per grid point, warm-starting each p from the previous
// best direction.
std::vector<std::pair<double, KatoEstimate>> kappa_curve(int n, int d,
                                                         const std::vector<double>& p_grid,
                                                         const SearchConfig& config);

// Worker count: KATOLAB_THREADS if set and valid, else hardware threads.
int thread_budget();

} // namespace katolab::search
