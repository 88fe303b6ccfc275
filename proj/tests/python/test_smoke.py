"""Smoke tests for the python bindings (run against the built _core module)."""

import math

import pytest

import _core as cb


def test_fold_classification():
    fold = cb.make_model_phase(1)
    assert fold.n_x == 2
    prof = cb.classify_caustic(fold, [0.0, 0.0], [0.0])
    assert prof["corank"] == 1
    assert prof["index_m"] == 1
    assert prof["kappa"] == "1/6"
    assert prof["q_m"] == "4"


def test_cusp_classification():
    cusp = cb.make_model_phase(2)
    prof = cb.classify_caustic(cusp, [0.0, 0.0, 0.0], [0.0])
    assert prof["index_m"] == 2
    assert prof["kappa"] == "1/4"


def test_phase_grammar_and_stationary_points():
    ph = cb.phase_from_expr("a^3 + x1*a + x2")
    assert ph.n_x == 2
    roots = cb.find_stationary_points(ph, [-3.0, 0.0])
    assert len(roots) == 2
    assert roots[0][0] == pytest.approx(-1.0, abs=1e-10)
    assert roots[1][1] == 1  # simple


def test_exponent_calculus():
    assert cb.classify_pq("5/4", "5", 1) == "C_1"
    assert cb.sobolev_order("10/9", "5/3", 1, 2)["order"] == "7/10"
    hw = cb.halfwave_orders("4", 3, 1)
    assert hw == {"uniform": "1", "blowup": "1/4", "robust": "13/12"}
    assert cb.predicted_lq_growth("8", 1) == "1/12"
    assert cb.hardy_order("inf", 1, 1) == "7/6"


def test_dyadic_bookkeeping():
    j0, s0 = cb.sigma0(4096, 1)
    assert (j0, s0) == (4, 1.0 / 16.0)
    pieces = cb.enumerate_pieces(2, 1)
    assert pieces == ["l=1,j=tilde,s=+"]


def test_bumps_partition():
    b = cb.BumpPair()
    assert b.rho(0.5) == 1.0
    assert b.rho(3.0) == 0.0
    assert b.beta(0.5) == 0.0
    assert cb.partition_residual(100.0, 10) <= 1e-12


def test_airy_and_u_tau():
    assert cb.airy(0.0) == pytest.approx(0.3550280538878172, abs=1e-10)
    fold = cb.make_model_phase(1)
    u = cb.u_tau(fold, [0.0, 0.0], 4096.0)
    expect = 4096 ** (1 / 6) * 2 * math.pi * 3 ** (-1 / 3) * cb.airy(0.0)
    assert abs(u) == pytest.approx(expect, rel=0.02)


def test_schur_identity():
    import numpy as np

    rng = np.random.default_rng(42)
    A, B, C = (rng.uniform(-1, 1, size=(3, 3)) for _ in range(3))
    D = rng.uniform(-1, 1, size=(3, 3)) + 3 * np.eye(3)
    lhs, rhs = cb.schur_determinant(A, B, C, D)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_sweep_runs():
    out = cb.run_sweep("vanishing", {"m": 2.0})
    assert out["slope"] == pytest.approx(0.5, abs=0.02)
    report = cb.verify("vanishing", {"m": 1.0})
    assert report["pass"] is True
    assert report["predicted"] == "1"
