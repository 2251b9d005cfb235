"""Optimal Kato constants, regularity thresholds, and instability certificates.

The heavy lifting lives in the compiled extension ``katolab._core``; this
package re-exports its functions under stable names.
"""

from ._core import (
    alpha_star,
    ball_integral_check,
    build_certificate,
    coefficients,
    constants_row,
    constraint_residual,
    critical_exponent,
    csk_vs_separate,
    eta,
    find_mixed_near_equality,
    fuzz_case1,
    fuzz_case2,
    fuzz_mixed,
    gap_certificate,
    inner_max,
    instability_range,
    kappa_closed,
    kappa_curve,
    kato2d_margin_case1,
    kato2d_margin_case2,
    kato_objective,
    make_witness,
    mixed_csk_discriminant,
    mixed_csk_margin,
    ode_residual,
    outer_search,
    project_feasible,
    projection_factor_check,
    regularity_window,
    thresholds,
    trace_constant,
    v_p,
)

__version__ = "0.1.0"

__all__ = [
    "alpha_star",
    "ball_integral_check",
    "build_certificate",
    "coefficients",
    "constants_row",
    "constraint_residual",
    "critical_exponent",
    "csk_vs_separate",
    "eta",
    "find_mixed_near_equality",
    "fuzz_case1",
    "fuzz_case2",
    "fuzz_mixed",
    "gap_certificate",
    "inner_max",
    "instability_range",
    "kappa_closed",
    "kappa_curve",
    "kato2d_margin_case1",
    "kato2d_margin_case2",
    "kato_objective",
    "make_witness",
    "mixed_csk_discriminant",
    "mixed_csk_margin",
    "ode_residual",
    "outer_search",
    "project_feasible",
    "projection_factor_check",
    "regularity_window",
    "thresholds",
    "trace_constant",
    "v_p",
]
