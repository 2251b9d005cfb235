#pragma once

#include <cstdint>
#include <utility>

namespace katolab::constants {

// Every extension/trace/Poincare constant evaluated at one exponent p.
// trace_range_warning flags rows outside [2, 3], where the trace chain
// is evaluated beyond its stated range.
struct ConstantsRow {
    double p;
    double V_p;
    double C_HL;
    double C_HL_simple;
    double C_P_scalar;
    double C_P;
    double alpha_star;
    double C_T;
    double C_ext;
    double quadrature_error;
    bool trace_range_warning;
};

// Regularity interval endpoints around p = 2 and p = 3.
struct Thresholds {
    double p0;               // (3 + sqrt 3)/2, root of the 2p(3-p) - 3 coefficient
    double eps3;             // (17 - 24 ln 2) / (3^{3/2} 2^{5/6})
    double p1;               // 3 - eps3
    double p1_rounded; // 2.961, the conventional rounded endpoint
};

// V_p = integral over [0,1] of t^3 (1+t)^(-p) dt, with an error bound.
std::pair<double, double> v_p(double p, double tol = 1e-13);

// The trace constant C_T(p, alpha) before optimizing alpha.
double trace_constant(double p, double alpha);

// Minimizer of trace_constant(p, .) over (0, 1].
double alpha_star(double p);

ConstantsRow constants_row(double p);

// eps3 computed from its closed form and cross-checked against the
// reciprocal of the grid supremum of C_ext over [2, 3]; the two routes
// must agree to 1e-10.
Thresholds thresholds();

// Coefficients (3/2)(4 - p(3-p)^2) and 2p(3-p) - 3 of the p-energy
// comparison; the second one changes sign at p0.
std::pair<double, double> coefficients(double p);

enum class Window { NEAR_2_REGULAR, OPEN_GAP, NEAR_3_REGULAR, OUT_OF_RANGE };

const char* window_name(Window w);

Window regularity_window(double p);

// Monte-Carlo minimum of the sphere-projection differential norm against
// the closed form 1/(1 + a_norm); returns (numeric_min, closed_form).
std::pair<double, double> projection_factor_check(double a_norm, long long samples,
                                                  std::uint64_t seed);

// Radial quadrature of the unit-4-ball integral of |a|^(-p) against
// 2 pi^2 / (4 - p); returns (value, closed_form).
std::pair<double, double> ball_integral_check(double p, double tol = 1e-10);

} // namespace katolab::constants
