#pragma once

#include <optional>
#include <utility>

namespace katolab::equatorial {

// Negative second-variation certificate for the equatorial sphere map.
// The radial profile eta(r) = r^s sin(mu ln r) on [r0, 1] (zero below
// r0) solves the indicial ODE exactly, so the stability integral can be
// checked against its analytic value.
struct InstabilityCertificate {
    int n;
    double p;
    double eps;            // slack added to the zero-order coefficient
    double s;              // radial exponent (p - n)/2
    double mu;             // sqrt(-Delta_eps)/2, oscillation frequency in ln r
    double r0;             // exp(-pi/mu), the largest sin zero below 1
    double integral_value; // quadrature of the stability integral
    double analytic_value; // quadrature of -eps * int r^{n-p-1} eta^2
    double quad_error;
};

// Exponents p for which the equatorial map is unstable: (n - 2 sqrt(n-1), n).
std::pair<double, double> instability_range(int n);

// Builds the certificate; eps defaults to half the available slack
// (n - 1 - (n-p)^2/4)/2, keeping the indicial discriminant negative.
InstabilityCertificate build_certificate(int n, double p, std::optional<double> eps = std::nullopt,
                                         double tol = 1e-12);

// Largest relative residual of the radial ODE
//   eta'' + ((n-p+1)/r) eta' + ((n-1-eps)/r^2) eta = 0
// over m_points log-spaced radii in (r0, 1), using closed-form
// derivatives of eta.
double ode_residual(const InstabilityCertificate& cert, int m_points);

// Profile value at radius r (zero at or below r0).
double eta(const InstabilityCertificate& cert, double r);

} // namespace katolab::equatorial
