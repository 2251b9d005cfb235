#include "katolab/equatorial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "katolab/quadrature.hpp"

namespace katolab::equatorial {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

} // namespace

std::pair<double, double> instability_range(int n) {
    if (n < 2) throw std::domain_error("instability_range: requires n >= 2");
    return {n - 2.0 * std::sqrt(static_cast<double>(n - 1)), static_cast<double>(n)};
}

InstabilityCertificate build_certificate(int n, double p, std::optional<double> eps_opt,
                                         double tol) {
    const auto [lo, hi] = instability_range(n);
    if (!(p > lo && p < hi))
        throw std::domain_error("build_certificate: p lies outside the open instability range");

    // Slack between 4(n-1) and (n-p)^2; any eps below slack/4 keeps the
    // discriminant (n-p)^2 - 4(n-1-eps) negative.
    const double s = 0.5 * (p - n);
    const double slack = (n - 1.0) - s * s;
    const double eps = eps_opt.value_or(0.5 * slack);
    if (!(eps > 0.0)) throw std::invalid_argument("build_certificate: eps must be positive");
    const double disc = 4.0 * (s * s - (n - 1.0 - eps));
    if (!(disc < 0.0))
        throw std::invalid_argument("build_certificate: eps too large, the discriminant must "
                                    "stay negative for an oscillatory profile");

    InstabilityCertificate cert{};
    cert.n = n;
    cert.p = p;
    cert.eps = eps;
    cert.s = s;
    cert.mu = 0.5 * std::sqrt(-disc);
    cert.r0 = std::exp(-kPi / cert.mu);

    // Substituting t = ln r removes every exponential from both
    // integrands: the stability integral becomes
    //   int_{-pi/mu}^0 (s sin(mu t) + mu cos(mu t))^2 - (n-1) sin^2(mu t) dt
    // and the right side of the integration-by-parts identity becomes
    //   -eps int_{-pi/mu}^0 sin^2(mu t) dt.
    const double mu = cert.mu;
    const double t0 = -kPi / mu;
    const auto stability = integrate(
        [s, mu, n](double t) {
            const double sn = std::sin(mu * t);
            const double cs = std::cos(mu * t);
            const double zp = s * sn + mu * cs;
            return zp * zp - (n - 1.0) * sn * sn;
        },
        t0, 0.0, tol);
    const auto weight = integrate(
        [mu](double t) {
            const double sn = std::sin(mu * t);
            return sn * sn;
        },
        t0, 0.0, tol);

    cert.integral_value = stability.value;
    cert.analytic_value = -eps * weight.value;
    cert.quad_error = std::max(stability.error + eps * weight.error,
                               1e-15 * (std::abs(cert.integral_value) +
                                        std::abs(cert.analytic_value) + 1.0));
    return cert;
}

double eta(const InstabilityCertificate& cert, double r) {
    if (r <= cert.r0) return 0.0;
    return std::pow(r, cert.s) * std::sin(cert.mu * std::log(r));
}

double ode_residual(const InstabilityCertificate& cert, int m_points) {
    if (m_points < 10) throw std::invalid_argument("ode_residual: need at least 10 points");
    const int n = cert.n;
    const double p = cert.p, s = cert.s, mu = cert.mu, eps = cert.eps;
    const double t_lo = std::log(cert.r0);

    double worst = 0.0;
    for (int k = 1; k <= m_points; ++k) {
        // log-spaced radii strictly inside (r0, 1)
        const double t = t_lo * (1.0 - static_cast<double>(k) / (m_points + 1));
        const double r = std::exp(t);
        const double sn = std::sin(mu * t);
        const double cs = std::cos(mu * t);

        const double e = std::pow(r, s) * sn;
        const double ep = std::pow(r, s - 1.0) * (s * sn + mu * cs);
        const double epp = std::pow(r, s - 2.0) * ((s * s - s - mu * mu) * sn + (2.0 * s - 1.0) * mu * cs);

        const double term1 = epp;
        const double term2 = (n - p + 1.0) / r * ep;
        const double term3 = (n - 1.0 - eps) / (r * r) * e;
        const double scale = std::max({std::abs(term1), std::abs(term2), std::abs(term3), 1e-300});
        worst = std::max(worst, std::abs(term1 + term2 + term3) / scale);
    }
    return worst;
}

} // namespace katolab::equatorial
