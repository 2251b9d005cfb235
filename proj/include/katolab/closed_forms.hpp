#pragma once

#include <optional>

#include "katolab/tensor.hpp"

namespace katolab::closed_forms {

// Which exact regime produced the value. REDUCED marks that d was first
// lowered to n (the constant is d-independent once d >= n).
enum class Source { P2, D1, N2, REDUCED };

const char* source_name(Source s);

struct ClosedForm {
    double value;
    Source source;
};

// Exact kappa(p, n, d) where a closed form is known: p = 2, or target
// dimension 1 after the d -> min(d, n) reduction, or n = 2. Absence of a
// closed form is a value, not an error.
std::optional<ClosedForm> kappa_closed(const Params& params);

// p(n) = 1 + sqrt(n - 1), where the scalar formula saturates its cap of 2.
double critical_exponent(int n);

// The explicit certificate separating kappa(1+sqrt 2, 3, 2) from the
// scalar value 2: ratio exactly 14/(25 + 2 sqrt 2).
Witness gap_certificate_63();

} // namespace katolab::closed_forms
