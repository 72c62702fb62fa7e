import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonneg_params, rationals
from delannoy import asymptotics as asy
from delannoy.acceptance import FIGURES, REGIME_REPRESENTATIVES
from delannoy.grid import compute_diagonal, fibonacci_boundary, compute_diagonal_custom
from delannoy.params import ParameterError, Params


@pytest.mark.parametrize("case,p", sorted(REGIME_REPRESENTATIVES.items()))
def test_representatives_hit_their_case(case, p):
    assert asy.classify(p).case == case


def test_classic_is_surd():
    form = asy.classify(Params.classic())
    assert form.regime == asy.SURD
    assert form.rho == pytest.approx(3 + 2 * math.sqrt(2))
    assert form.prefactor_exponent == -0.5
    assert form.constant == pytest.approx(1 / (2 * math.sqrt(math.pi) * math.sqrt(3 * math.sqrt(2) - 4)))


def test_exact_threshold_tie_is_not_surd():
    # alpha beta = 1, gamma = 3 gives T = 3; A beta = 3 sits exactly on it
    form = asy.classify(Params(3, 1, 1, 1, 3))
    assert form.case == 4
    assert form.regime == asy.A_DOMINANT
    just_below = asy.classify(Params("2999/1000", 1, 1, 1, 3))
    assert just_below.regime == asy.SURD


def test_alpha_beta_zero_is_geometric():
    p = Params(3, 5, 0, 2, 1)
    form = asy.classify(p)
    assert form.regime == asy.GEOMETRIC
    diag = compute_diagonal(p, 10).values
    rate = p.A * p.beta + p.gamma
    assert diag == [rate**n for n in range(11)]
    assert form.rho == float(rate)


def test_geometric_parameters():
    form = asy.classify(Params(3, 2, 1, 1, 1))
    assert form.regime == asy.GEOMETRIC
    assert form.rho == 6.0


def test_classify_rejects_negative():
    with pytest.raises(ParameterError):
        asy.classify(Params(1, -1, 1, 1, 1))


def test_constant_K_preconditions():
    with pytest.raises(ParameterError):
        asy.constant_K(Params(1, 1, 1, 1, 0))
    with pytest.raises(ParameterError):
        asy.constant_K(Params(10, 1, 1, 1, 1))
    with pytest.raises(ParameterError):
        asy.constant_K(Params(1, 1, 0, 1, 1))


@given(rationals(1, 9, 4), rationals(1, 30, 7))
def test_K_reduces_to_weighted_constant(a, g):
    p = Params.weighted(a, 1 / a, g)
    r = math.sqrt(float(g) + 1)
    assert asy.constant_K(p) == pytest.approx((1 + r) / (2 * math.sqrt(math.pi) * math.sqrt(r)), rel=1e-10)


@settings(max_examples=20)
@given(nonneg_params(max_den=3))
def test_empirical_rate_close_to_predicted(p):
    form = asy.classify(p)
    if form.rho == 0:
        return
    diag = compute_diagonal(p, 400).values
    if diag[400] == 0 or diag[399] == 0:
        return
    ratio = float(diag[400] / diag[399])
    # the surd law converges like 1/n, the pure exponential ones faster
    assert ratio == pytest.approx(form.rho, rel=2e-2)


def test_classic_growth_and_constant():
    rho_hat, k_hat = asy.empirical_growth(Params.classic(), 1000)
    assert rho_hat == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-3)
    assert k_hat == pytest.approx(asy.classify(Params.classic()).constant, rel=1e-3)


def test_tie_constant_near_two():
    _, c = asy.empirical_growth(REGIME_REPRESENTATIVES[6], 800)
    assert c == pytest.approx(2.0, rel=2e-2)


def test_trajectory_exact_and_xfloat_agree():
    p = Params(5, 4, 3, 2, 1)
    exact = asy.ratio_trajectory(p, 300)
    approx = asy.ratio_trajectory(p, 300, exact_limit=0)
    assert np.allclose(exact, approx, rtol=1e-10)


def test_trajectory_marks_zero_denominators():
    # f[1][1] = 1 + 1 - 2 = 0
    p = Params(1, 1, 1, 1, -2)
    traj = asy.ratio_trajectory(p, 5)
    assert traj[0] == 0.0
    assert math.isnan(traj[1])


# synthetic trajectories


def test_diagnose_constant():
    d = asy.diagnose_ratio([5.0] * 200)
    assert d.kind == "converges" and d.k == 1 and d.witnesses == [5.0]


def test_diagnose_two_cycle_rotated_to_max():
    traj = [(1.5 if k % 2 else -2.0) + 0.5**k for k in range(200)]
    d = asy.diagnose_ratio(traj)
    assert d.kind == "k_cycle" and d.k == 2
    assert d.witnesses == pytest.approx([1.5, -2.0])


def test_diagnose_three_cycle():
    traj = [[2.8, 0.6, -4.8][k % 3] for k in range(300)]
    d = asy.diagnose_ratio(traj)
    assert (d.kind, d.k) == ("k_cycle", 3)
    assert d.witnesses == pytest.approx([2.8, 0.6, -4.8])


def test_diagnose_unbounded():
    traj = [1.0] * 150 + [float(2**k) for k in range(50)]
    assert asy.diagnose_ratio(traj).kind == "unbounded"


def test_diagnose_chaotic_is_inconclusive():
    x, traj = 0.3, []
    for _ in range(400):
        x = 3.99 * x * (1 - x)
        traj.append(x)
    assert asy.diagnose_ratio(traj).kind == "inconclusive"


def test_diagnose_too_short_and_undefined():
    with pytest.raises(ValueError):
        asy.diagnose_ratio([1.0] * 10)
    d = asy.diagnose_ratio([1.0] * 100 + [math.nan] * 100)
    assert d.kind == "undefined_ratio"
    assert d.undefined_indices[0] == 100


@given(st.floats(-100, 100, allow_nan=False), st.floats(0.01, 0.9))
def test_diagnose_geometric_approach(limit, rate):
    traj = [limit + rate**k for k in range(200)]
    d = asy.diagnose_ratio(traj)
    assert d.kind == "converges"
    assert d.witnesses[0] == pytest.approx(limit, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("verdict", sorted(FIGURES))
def test_figure_dynamics(verdict):
    p, caption = FIGURES[verdict]
    d = asy.diagnose_ratio(asy.ratio_trajectory(p, asy.FIGURE_TRAJECTORY_LENGTH))
    if verdict == "unbounded":
        assert d.kind == "unbounded"
        return
    assert len(d.witnesses) == len(caption)
    assert all(abs(w - c) <= 0.01 for w, c in zip(d.witnesses, caption))


def test_conjecture_report_fibonacci():
    vals = compute_diagonal_custom(Params.classic(), fibonacci_boundary(), 10).values
    rows = asy.conjecture_report("fib", vals[1:], shift=0.0)
    assert rows[0][1] == pytest.approx(5.0)
    assert len(rows) == 9
