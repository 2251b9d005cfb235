#pragma once

#include <cmath>
#include <utility>

namespace katolab {

// Golden-section minimization on [a, b]. Assumes unimodality; returns the
// bracket midpoint once the bracket is narrower than tol.
template <typename F>
std::pair<double, double> golden_min(const F& f, double a, double b, double tol = 1e-10,
                                     int max_iter = 200) {
    constexpr double invphi = 0.6180339887498948482045868343656;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

} // namespace katolab
