import math

import pytest
from hypothesis import assume, given, settings

from conftest import nonneg_params
from delannoy.asymptotics import classify
from delannoy.genfun import (
    SERIES_CUTOFF,
    DomainError,
    central_integral,
    diagonal_series,
    eval_bivariate,
    eval_diagonal_gf,
    eval_diagonal_point,
    residues_at_small_poles,
)
from delannoy.grid import central_double_factorial, compute_grid
from delannoy.params import ParameterError, Params


def _double_series(p, x, y, N):
    g = compute_grid(p, N, N)
    return math.fsum(float(g[m, n]) * x**m * y**n for m in range(N + 1) for n in range(N + 1))


@settings(max_examples=25)
@given(nonneg_params())
def test_bivariate_matches_double_series(p):
    x = y = 0.03
    try:
        value = eval_bivariate(p, x, y)
    except DomainError:
        assume(False)
    assert value == pytest.approx(_double_series(p, x, y, 45), rel=1e-10)


def test_bivariate_classic():
    x, y = 0.1, 0.2
    assert eval_bivariate(Params.classic(), x, y) == pytest.approx(1 / (1 - x - y - x * y), rel=1e-14)


def test_bivariate_domain():
    with pytest.raises(DomainError):
        eval_bivariate(Params(4, 1, 1, 1, 1), 0.3, 0.1)
    with pytest.raises(DomainError):
        eval_bivariate(Params.classic(), 0.5, 0.5)


def test_classic_diagonal_closed_form():
    for z in (1e-3, 0.05, 0.1, 0.15):
        assert eval_diagonal_gf(Params.classic(), z) == pytest.approx(1 / math.sqrt(1 - 6 * z + z * z), rel=1e-12)


@settings(max_examples=40)
@given(nonneg_params())
def test_diagonal_gf_matches_series(p):
    rho = classify(p).rho
    z = 0.15 / rho if rho > 0 else 0.05
    assume(z >= SERIES_CUTOFF)
    try:
        value = eval_diagonal_gf(p, z)
    except DomainError:
        assume(False)
    assert value == pytest.approx(diagonal_series(p, z, 80), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("p", [Params(5, 4, 3, 2, 1), Params(2, 4, 1, 1, "8/5"), Params(3, 3, 0, 2, 1), Params(2, 1, 1, 0, 3)])
def test_diagonal_gf_fixed_sets(p):
    z = 0.2 / classify(p).rho
    assert eval_diagonal_gf(p, z) == pytest.approx(diagonal_series(p, z, 80), rel=1e-10)


def test_residue_split_sums_to_value():
    p = Params(5, 4, 3, 2, 1)
    z = 0.01
    first, second = residues_at_small_poles(p, z)
    assert first + second == pytest.approx(eval_diagonal_gf(p, z), rel=1e-15)


def test_small_z_uses_series():
    p = Params(5, 4, 3, 2, 1)
    pt = eval_diagonal_point(p, 1e-6)
    assert pt.truncation_order is not None
    assert pt.value == pytest.approx(1 + 23e-6, rel=1e-9)  # f[1][1] = 3*4 + 2*5 + 1


def test_diagonal_domain_errors():
    with pytest.raises(DomainError):
        eval_diagonal_gf(Params.classic(), 0.2)  # radius is 3 - 2 sqrt 2
    with pytest.raises(DomainError):
        eval_diagonal_gf(Params.classic(), -0.1)
    with pytest.raises(ParameterError):
        eval_diagonal_gf(Params(1, -1, 1, 1, 1), 0.01)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20])
def test_central_integral(n):
    assert central_integral(n) == pytest.approx(float(central_double_factorial(n)), rel=1e-10)


def test_central_integral_rejects():
    with pytest.raises(ParameterError):
        central_integral(-1)
    with pytest.raises(ParameterError):
        central_integral(3, nodes=4)
