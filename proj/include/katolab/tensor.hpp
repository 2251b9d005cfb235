#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace katolab {

// Problem instance (p, n, d): exponent, domain dimension, target dimension.
struct Params {
    double p;
    int n;
    int d;

    Params(double p_, int n_, int d_) : p(p_), n(n_), d(d_) {
        if (!(p >= 1.0)) throw std::invalid_argument("Params: p must be >= 1");
        if (n < 1) throw std::invalid_argument("Params: n must be >= 1");
        if (d < 1) throw std::invalid_argument("Params: d must be >= 1");
    }
};

// Unit-norm n x d array v[j][a]; normalized on construction.
class GradientDirection {
public:
    GradientDirection(int n, int d, std::vector<double> entries);

    int n() const { return n_; }
    int d() const { return d_; }
    double at(int j, int a) const { return a_[static_cast<std::size_t>(j) * d_ + a]; }
    const std::vector<double>& entries() const { return a_; }

private:
    int n_, d_;
    std::vector<double> a_;
};

// Symmetric n x n x d array w[i][j][a], stored as the upper triangle
// (i <= j). The accessor resolves both index orders, so symmetry can
// never be violated by construction.
class HessianCandidate {
public:
    HessianCandidate(int n, int d); // zero-initialized

    int n() const { return n_; }
    int d() const { return d_; }

    double at(int i, int j, int a) const { return tri_[offset(i, j, a)]; }
    void set(int i, int j, int a, double value) { tri_[offset(i, j, a)] = value; }

    // Frobenius norm of the full tensor: off-diagonal entries count twice.
    double frobenius_norm() const;

    HessianCandidate normalized() const;
    HessianCandidate scaled(double t) const;

    // Number of independent coordinates, d * n(n+1)/2.
    int triangle_size() const { return static_cast<int>(tri_.size()); }

private:
    std::size_t offset(int i, int j, int a) const {
        if (i < 0 || j < 0 || a < 0 || i >= n_ || j >= n_ || a >= d_)
            throw std::invalid_argument("HessianCandidate: index out of range");
        if (i > j) std::swap(i, j);
        const std::size_t tri = static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
        return tri * d_ + a;
    }

    int n_, d_;
    std::vector<double> tri_;
};

// Infeasible (v, w) pairs are rejected with the offending residual norm.
class feasibility_error : public std::runtime_error {
public:
    feasibility_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_norm(residual) {}
    double residual_norm;
};

// Components of the linear feasibility system: component a is
//   sum_i w[i][i][a] + (p-2) * sum_{i,j,b} v[i][a] v[j][b] w[i][j][b].
std::vector<double> constraint_residual(const GradientDirection& v, const HessianCandidate& w,
                                        double p);

double constraint_residual_norm(const GradientDirection& v, const HessianCandidate& w, double p);

// sum_i ( sum_{j,a} v[j][a] w[i][j][a] )^2. For unit w a feasible pair
// with value L certifies kappa <= 1/L.
double kato_objective(const GradientDirection& v, const HessianCandidate& w);

// Feasible certified pair: w unit, objective ratio, residual norm.
struct Witness {
    GradientDirection v;
    HessianCandidate w;
    double ratio;
    double constraint_residual_norm;

    // The stored ratio must always match a fresh evaluation.
    double recomputed_ratio() const { return kato_objective(v, w); }
};

// Normalizes w, evaluates the pair, rejects residual norms above tol.
Witness make_witness(const GradientDirection& v, const HessianCandidate& w, double p,
                     double tol = 1e-9);

} // namespace katolab
