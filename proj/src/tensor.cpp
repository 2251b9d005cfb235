#include "katolab/tensor.hpp"

#include <cmath>

namespace katolab {

GradientDirection::GradientDirection(int n, int d, std::vector<double> entries)
    : n_(n), d_(d), a_(std::move(entries)) {
    if (n < 1 || d < 1) throw std::invalid_argument("GradientDirection: dimensions must be positive");
    if (a_.size() != static_cast<std::size_t>(n) * d)
        throw std::invalid_argument("GradientDirection: entry count does not match n*d");
    double s = 0.0;
    for (double x : a_) s += x * x;
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("GradientDirection: entries must have positive finite norm");
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : a_) x *= inv;
}

HessianCandidate::HessianCandidate(int n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 1) throw std::invalid_argument("HessianCandidate: dimensions must be positive");
    tri_.assign(static_cast<std::size_t>(n) * (n + 1) / 2 * d, 0.0);
}

double HessianCandidate::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            const double mult = (i == j) ? 1.0 : 2.0;
            for (int a = 0; a < d_; ++a) {
                const double x = at(i, j, a);
                s += mult * x * x;
            }
        }
    return std::sqrt(s);
}

HessianCandidate HessianCandidate::normalized() const {
    const double norm = frobenius_norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw std::invalid_argument("HessianCandidate: cannot normalize a zero or non-finite tensor");
    return scaled(1.0 / norm);
}

HessianCandidate HessianCandidate::scaled(double t) const {
    HessianCandidate out(n_, d_);
    for (std::size_t k = 0; k < tri_.size(); ++k) out.tri_[k] = tri_[k] * t;
    return out;
}

static void check_shapes(const GradientDirection& v, const HessianCandidate& w) {
    if (v.n() != w.n() || v.d() != w.d())
        throw std::invalid_argument("shape mismatch between gradient direction and Hessian candidate");
}

std::vector<double> constraint_residual(const GradientDirection& v, const HessianCandidate& w,
                                        double p) {
    check_shapes(v, w);
    if (!(p >= 1.0)) throw std::invalid_argument("constraint_residual: p must be >= 1");
    const int n = v.n(), d = v.d();
    std::vector<double> res(d, 0.0);
    for (int a = 0; a < d; ++a) {
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += w.at(i, i, a);
        double quad = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < d; ++b) quad += v.at(i, a) * v.at(j, b) * w.at(i, j, b);
        res[a] = trace + (p - 2.0) * quad;
    }
    return res;
}

double constraint_residual_norm(const GradientDirection& v, const HessianCandidate& w, double p) {
    double s = 0.0;
    for (double r : constraint_residual(v, w, p)) s += r * r;
    return std::sqrt(s);
}

double kato_objective(const GradientDirection& v, const HessianCandidate& w) {
    check_shapes(v, w);
    const int n = v.n(), d = v.d();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < d; ++a) row += v.at(j, a) * w.at(i, j, a);
        total += row * row;
    }
    return total;
}

Witness make_witness(const GradientDirection& v, const HessianCandidate& w, double p, double tol) {
    check_shapes(v, w);
    HessianCandidate unit = w.normalized();
    const double residual = constraint_residual_norm(v, unit, p);
    if (!(residual <= tol))
        throw feasibility_error("make_witness: candidate violates the feasibility system "
                                "(residual norm " + std::to_string(residual) + ")",
                                residual);
    const double ratio = kato_objective(v, unit);
    return Witness{v, unit, ratio, residual};
}

} // namespace katolab
