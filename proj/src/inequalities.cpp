#include "katolab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "katolab/rng.hpp"

namespace katolab::ineq {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

void check_unit_pair(double a, double b, const char* what) {
    if (std::abs(a * a + b * b - 1.0) > 1e-12) throw std::domain_error(what);
}

// The margins are quadratics in the rotated pair (z, w); evaluating them
// there avoids the cancellation the raw expansion invites.
double mixed_margin_zw(double z, double w, double theta1, double theta2, double p) {
    return 2.0 * (p - 2.0) * theta1 * theta1 * z * z +
           (6.0 * (p - 2.0) / p) * theta1 * theta2 * z * w + (6.0 / p) * w * w;
}

double min_eigenvalue_2x2(double a, double b_half, double c) {
    const double mean = 0.5 * (a + c);
    const double off = 0.5 * (a - c);
    return mean - std::sqrt(off * off + b_half * b_half);
}

} // namespace

double mixed_csk_margin(double x, double y, double theta1, double theta2, double p) {
    check_unit_pair(theta1, theta2, "mixed_csk_margin: theta1^2 + theta2^2 must equal 1");
    if (!(p >= 2.0 && p <= 3.0))
        throw std::domain_error("mixed_csk_margin: p must lie in [2, 3]");
    const double z = theta1 * x + theta2 * y;
    const double w = theta2 * x - theta1 * y;
    return mixed_margin_zw(z, w, theta1, theta2, p);
}

double mixed_csk_discriminant(double theta1, double theta2, double p) {
    check_unit_pair(theta1, theta2, "mixed_csk_discriminant: theta1^2 + theta2^2 must equal 1");
    if (p == 2.0) {
        // The reduced form is scaled by p/(2(p-2)), which degenerates here;
        // classify by the margin quadratic itself instead.
        const double a = 2.0 * (p - 2.0) * theta1 * theta1;
        const double b_half = 0.5 * (6.0 * (p - 2.0) / p) * theta1 * theta2;
        return -min_eigenvalue_2x2(a, b_half, 6.0 / p);
    }
    if (!(p > 2.0 && p <= 3.0))
        throw std::domain_error("mixed_csk_discriminant: p must lie in (2, 3] (or exactly 2)");
    return 9.0 * theta1 * theta1 * theta2 * theta2 - 12.0 * p * theta1 * theta1 / (p - 2.0);
}

double kato2d_margin_case1(double z, double w, double alpha1, double alpha2, double p) {
    check_unit_pair(alpha1, alpha2, "kato2d_margin_case1: alpha1^2 + alpha2^2 must equal 1");
    if (!(p > 2.0)) throw std::domain_error("kato2d_margin_case1: requires p > 2 (case 2 covers p <= 2)");
    return p * alpha1 * alpha1 * z * z + 2.0 * alpha1 * alpha2 * z * w +
           (2.0 / (p - 2.0)) * w * w;
}

double kato2d_margin_case2(double z, double w, double alpha1, double alpha2, double p) {
    check_unit_pair(alpha1, alpha2, "kato2d_margin_case2: alpha1^2 + alpha2^2 must equal 1");
    if (!(p >= 1.0 && p <= 2.0))
        throw std::domain_error("kato2d_margin_case2: requires p in [1, 2]");
    const double q = p - 1.0;
    return (2.0 + p * (p - 2.0) * alpha1 * alpha1) * z * z +
           2.0 * (p - 2.0) * alpha1 * alpha2 * z * w + 2.0 * w * w - (1.0 + q * q) * z * z;
}

std::pair<double, double> csk_vs_separate(double p) {
    if (!(p >= 2.0 && p <= 3.0))
        throw std::domain_error("csk_vs_separate: p must lie in [2, 3]");
    return {3.0 / p, (p + 1.0) / p};
}

namespace {

// Cauchy-distributed direction, normalized to the unit circle, so axis
// ratios of every magnitude get probed.
std::pair<double, double> heavy_unit_pair(Rng& rng) {
    for (;;) {
        const double a = rng.cauchy();
        const double b = rng.cauchy();
        const double h = std::hypot(a, b);
        if (h > 0.0 && std::isfinite(h)) return {a / h, b / h};
    }
}

template <typename Sampler>
IneqReport run_fuzz(long long samples, std::uint64_t seed, const Sampler& sample_margin) {
    IneqReport report;
    report.samples = samples;
    report.worst_margin = std::numeric_limits<double>::infinity();
    Rng rng = Rng::stream(seed, 0);
    for (long long i = 0; i < samples; ++i) {
        const auto [margin, witness] = sample_margin(rng);
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.witness_of_worst = witness;
        }
        if (margin < kViolationThreshold) ++report.violations;
    }
    return report;
}

} // namespace

IneqReport fuzz_mixed(long long samples, std::uint64_t seed) {
    return run_fuzz(samples, seed, [](Rng& rng) {
        const auto [x, y] = heavy_unit_pair(rng);
        const double phi = rng.uniform(0.0, 0.5 * kPi);
        const double t1 = std::cos(phi);
        const double t2 = std::sin(phi);
        const double p = rng.uniform(2.0, 3.0);
        return std::make_pair(mixed_csk_margin(x, y, t1, t2, p),
                              std::array<double, 5>{x, y, t1, t2, p});
    });
}

IneqReport fuzz_case1(long long samples, std::uint64_t seed) {
    return run_fuzz(samples, seed, [](Rng& rng) {
        const auto [z, w] = heavy_unit_pair(rng);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double a1 = std::cos(phi);
        const double a2 = std::sin(phi);
        const double p = 4.0 - 2.0 * rng.uniform01(); // (2, 4]
        return std::make_pair(kato2d_margin_case1(z, w, a1, a2, p),
                              std::array<double, 5>{z, w, a1, a2, p});
    });
}

IneqReport fuzz_case2(long long samples, std::uint64_t seed) {
    return run_fuzz(samples, seed, [](Rng& rng) {
        const auto [z, w] = heavy_unit_pair(rng);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double a1 = std::cos(phi);
        const double a2 = std::sin(phi);
        const double p = rng.uniform(1.0, 2.0);
        return std::make_pair(kato2d_margin_case2(z, w, a1, a2, p),
                              std::array<double, 5>{z, w, a1, a2, p});
    });
}

double find_mixed_near_equality(double p, std::uint64_t seed) {
    // Inputs live on the unit circle (x, y) = (cos phi, sin phi) with
    // theta1 = cos(chi), chi in [0, pi/2]; compass descent over (phi, chi).
    const auto margin_at = [p](double phi, double chi) {
        const double c = std::clamp(chi, 0.0, 0.5 * kPi);
        return mixed_csk_margin(std::cos(phi), std::sin(phi), std::cos(c), std::sin(c), p);
    };

    Rng rng = Rng::stream(seed, 1);
    double best = std::numeric_limits<double>::infinity();
    for (int start = 0; start < 32; ++start) {
        double phi = rng.uniform(0.0, 2.0 * kPi);
        double chi = rng.uniform(0.0, 0.5 * kPi);
        double f = margin_at(phi, chi);
        double step = 0.3;
        for (int it = 0; it < 200 && step > 1e-9; ++it) {
            bool moved = false;
            for (const auto [dphi, dchi] :
                 {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
                const double cand = margin_at(phi + dphi, chi + dchi);
                if (cand < f) {
                    phi += dphi;
                    chi = std::clamp(chi + dchi, 0.0, 0.5 * kPi);
                    f = cand;
                    moved = true;
                }
            }
            if (!moved) step *= 0.5;
        }
        best = std::min(best, f);
    }
    return best;
}

} // namespace katolab::ineq
