"""Smoke tests for the compiled extension module."""

import math

import pytest

import katolab


def test_closed_forms():
    r = katolab.kappa_closed(2.0, 3, 2)
    assert r is not None
    assert r["value"] == pytest.approx(1.5, abs=1e-15)
    assert r["source"] == "P2"

    assert katolab.kappa_closed(2.5, 3, 2) is None
    assert katolab.kappa_closed(2.0, 1, 1) is None

    reduced = katolab.kappa_closed(1.25, 2, 5)
    assert reduced["value"] == pytest.approx(1.0625, abs=1e-15)
    assert reduced["source"] == "REDUCED"

    assert katolab.critical_exponent(3) == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-15)


def test_objective_and_witness():
    v = [[1.0], [0.0]]
    w = [[[1.0], [0.0]], [[0.0], [-1.0]]]  # traceless diagonal, feasible at p = 2
    res = katolab.constraint_residual(v, w, 2.0)
    assert res == pytest.approx([0.0], abs=1e-15)
    assert katolab.kato_objective(v, w) == pytest.approx(1.0, abs=1e-15)

    wit = katolab.make_witness(v, w, 2.0)
    assert wit["ratio"] == pytest.approx(0.5, abs=1e-14)
    assert wit["constraint_residual_norm"] <= 1e-12
    # returned tensors are unit-norm and symmetric
    assert wit["w"][0][1] == wit["w"][1][0]


def test_gap_certificate():
    wit = katolab.gap_certificate()
    assert wit["ratio"] == pytest.approx(14.0 / (25.0 + 2.0 * math.sqrt(2.0)), abs=1e-14)
    assert 1.0 / wit["ratio"] <= 1.98775


def test_inner_and_outer_search():
    inner = katolab.inner_max([[0.6], [0.8]], 2.0)
    assert inner["lambda"] == pytest.approx(0.5, abs=1e-12)

    est = katolab.outer_search(2.5, 2, 2, restarts=12, seed=3)
    assert est["kappa_upper"] == pytest.approx(2.0, abs=5e-3)
    assert est["witness"]["constraint_residual_norm"] <= 1e-9

    curve = katolab.kappa_curve(2, 2, [1.5, 2.0], restarts=12, seed=3)
    assert len(curve) == 2
    assert curve[0]["estimate"]["kappa_upper"] == pytest.approx(1.25, abs=5e-3)


def test_project_feasible():
    v = [[0.6, 0.0], [0.8, 0.0], [0.0, 1.0]]
    w = [[[1.0, 2.0]] * 3] * 3
    proj = katolab.project_feasible(v, 2.5, w)
    res = katolab.constraint_residual(v, proj, 2.5)
    assert max(abs(x) for x in res) <= 1e-10


def test_constants_and_thresholds():
    row = katolab.constants_row(3.0)
    assert row["C_HL"] == pytest.approx(8.0 / (17.0 - 24.0 * math.log(2.0)), abs=1e-9)
    assert row["alpha_star"] == pytest.approx(2.0 ** (5.0 / 3.0) / 3.0**1.5, abs=1e-9)
    assert row["C_T"] == pytest.approx(3.0**1.5 / 2.0 ** (13.0 / 6.0), abs=1e-9)

    t = katolab.thresholds()
    assert t["p0"] == (3.0 + math.sqrt(3.0)) / 2.0
    assert t["p1"] == pytest.approx(3.0 - t["eps3"], abs=1e-15)
    assert t["p1_rounded"] == 2.961

    a, b = katolab.coefficients(2.0)
    assert (a, b) == pytest.approx((3.0, 1.0), abs=1e-15)
    assert katolab.regularity_window(2.2) == "NEAR_2_REGULAR"
    assert katolab.regularity_window(2.8) == "OPEN_GAP"

    vp, err = katolab.v_p(2.0)
    assert vp == pytest.approx(3.0 * math.log(2.0) - 2.0, abs=1e-12)
    assert err < 1e-10


def test_inequalities():
    assert katolab.mixed_csk_margin(1.0, 0.0, 0.0, 1.0, 2.4) == pytest.approx(
        6.0 / 2.4, abs=1e-13
    )
    assert katolab.mixed_csk_discriminant(1.0, 0.0, 2.5) == pytest.approx(-60.0, abs=1e-12)
    assert katolab.kato2d_margin_case2(1.0, 1.0, 1.0, 0.0, 2.0) == pytest.approx(2.0, abs=1e-13)
    assert katolab.csk_vs_separate(3.0) == pytest.approx((1.0, 4.0 / 3.0), abs=1e-15)

    report = katolab.fuzz_mixed(5000, seed=9)
    assert report["samples"] == 5000
    assert report["violations"] == 0

    with pytest.raises(Exception):
        katolab.mixed_csk_margin(1.0, 0.0, 0.5, 0.5, 2.5)


def test_equatorial():
    lo, hi = katolab.instability_range(3)
    assert lo == pytest.approx(3.0 - 2.0 * math.sqrt(2.0), abs=1e-15)
    assert hi == 3.0

    cert = katolab.build_certificate(3, 2.5)
    assert cert["integral_value"] < 0.0
    assert abs(cert["integral_value"] - cert["analytic_value"]) <= 10.0 * cert["quad_error"]
    assert katolab.ode_residual(3, 2.5) <= 1e-9
    assert katolab.eta(3, 2.5, None, cert["r0"]) == 0.0

    with pytest.raises(Exception):
        katolab.build_certificate(7, 2.0)
