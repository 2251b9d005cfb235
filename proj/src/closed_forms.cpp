#include "katolab/closed_forms.hpp"

#include <algorithm>
#include <cmath>

namespace katolab::closed_forms {

const char* source_name(Source s) {
    switch (s) {
        case Source::P2: return "P2";
        case Source::D1: return "D1";
        case Source::N2: return "N2";
        case Source::REDUCED: return "REDUCED";
    }
    return "?";
}

std::optional<ClosedForm> kappa_closed(const Params& params) {
    const double p = params.p;
    const int n = params.n;
    // No regime covers a one-dimensional domain: both scalar formulas
    // divide by n - 1.
    if (n < 2) return std::nullopt;

    const int d_reduced = std::min(params.d, n);
    const bool reduced = d_reduced != params.d;
    const auto tag = [&](double value, Source plain) {
        return ClosedForm{value, reduced ? Source::REDUCED : plain};
    };

    if (p == 1.0) return tag(1.0, Source::D1);
    if (p == 2.0) return tag(static_cast<double>(n) / (n - 1.0), Source::P2);
    if (d_reduced == 1) {
        const double q = p - 1.0;
        return tag(std::min(2.0, 1.0 + q * q / (n - 1.0)), Source::D1);
    }
    if (n == 2) {
        const double q = p - 1.0;
        return tag(std::min(2.0, 1.0 + q * q), Source::N2);
    }
    return std::nullopt;
}

double critical_exponent(int n) {
    if (n < 2) throw std::domain_error("critical_exponent: requires n >= 2");
    return 1.0 + std::sqrt(static_cast<double>(n - 1));
}

Witness gap_certificate_63() {
    const double s2 = std::sqrt(2.0);
    const double alpha = -15.0 + 28.0 * s2;
    const double beta = 1.0 + 14.0 * s2;
    const double gamma = -17.0;

    GradientDirection v(3, 2, {1, 0, 0, 1, 0, 0});
    HessianCandidate w(3, 2);
    w.set(0, 0, 0, alpha);
    w.set(0, 1, 1, beta);
    w.set(1, 1, 0, gamma);
    w.set(2, 2, 0, gamma);
    return make_witness(v, w, 1.0 + s2, 1e-12);
}

} // namespace katolab::closed_forms
