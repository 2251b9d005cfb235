#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace katolab::ineq {

// Fuzzing outcome for one inequality. A sample counts as a violation
// only below -1e-12 after inputs are normalized to unit scale.
struct IneqReport {
    long long samples = 0;
    long long violations = 0;
    double worst_margin = 0.0;
    std::array<double, 5> witness_of_worst{}; // parameters of the worst sample
};

inline constexpr double kViolationThreshold = -1e-12;

// RHS - LHS of the mixed Cauchy-Schwarz/Kato bound
//   3 z^2 + (p-2) t1^2 z^2 <= (3/p)(x^2 + 2 y^2 + (x + (p-2) t1 z)^2 + (p-2) z^2),
// z = t1 x + t2 y. Requires t1^2 + t2^2 = 1 and p in [2, 3].
double mixed_csk_margin(double x, double y, double theta1, double theta2, double p);

// Discriminant 9 t1^2 t2^2 - 12 p t1^2 / (p-2) of the reduced quadratic
// form p t1^2 z^2 + 3 t1 t2 z w + (3/(p-2)) w^2; nonpositive iff the form
// is positive semidefinite. At p = 2 the reduction degenerates, so the
// classification falls back to the negated minimum of the margin over
// the unit circle in (z, w).
double mixed_csk_discriminant(double theta1, double theta2, double p);

// Case p > 2 of the planar sharp Kato split:
//   p a1^2 z^2 + 2 a1 a2 z w + (2/(p-2)) w^2.
double kato2d_margin_case1(double z, double w, double alpha1, double alpha2, double p);

// Case p in [1, 2]:
//   (2 + p(p-2) a1^2) z^2 + 2(p-2) a1 a2 z w + 2 w^2 - (1 + (p-1)^2) z^2.
double kato2d_margin_case2(double z, double w, double alpha1, double alpha2, double p);

// The mixed-inequality constant 3/p next to the constant (p+1)/p that
// separate Cauchy-Schwarz and Kato steps would give.
std::pair<double, double> csk_vs_separate(double p);

IneqReport fuzz_mixed(long long samples, std::uint64_t seed);
IneqReport fuzz_case1(long long samples, std::uint64_t seed);
IneqReport fuzz_case2(long long samples, std::uint64_t seed);

// Multistart local minimization of the mixed margin over unit-scale
// inputs; returns the smallest margin found (the bound is tight, so this
// approaches zero).
double find_mixed_near_equality(double p, std::uint64_t seed);

} // namespace katolab::ineq
