import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonneg_params, params_strategy, rationals
from delannoy.acceptance import CLASSIC_TABLE, FACTORIAL_DIAGONAL, FIB_DIAGONAL
from delannoy.grid import (
    GridSizeError,
    boundary_sum_oracle,
    both_zero_closed_form,
    central_double_factorial,
    classic_closed_forms,
    closed_form_W,
    compute_diagonal,
    compute_diagonal_custom,
    compute_diagonal_xfloat,
    compute_grid,
    compute_grid_custom,
    decompose_pqr,
    decompose_SGt,
    enumerate_paths_oracle,
    factorial_boundary,
    fibonacci,
    fibonacci_boundary,
    geometric_boundary,
    powpow_boundary,
    sequence_boundary,
)
from delannoy.params import ParameterError, Params, normalize


def test_classic_table():
    g = compute_grid(Params.classic(), 8, 8)
    assert [[g[m, n] for n in range(9)] for m in range(9)] == CLASSIC_TABLE


def test_figure_values():
    w = compute_grid(Params.weighted(2, 1, 3), 2, 2)
    assert w[2, 2] == 69
    assert w[1, 2] == 12
    assert compute_grid(Params(1, 1, 2, 1, 3), 2, 2)[2, 2] == 56


def test_hand_computed_cells():
    # one recurrence step: 1*4 + 1*2 + 8/5
    assert compute_grid(Params(2, 4, 1, 1, "8/5"), 1, 1)[1, 1] == Fraction(38, 5)
    assert compute_grid(Params.classic(), 3, 4)[3, 4] == 129


def test_boundary_is_geometric():
    p = Params(3, "-1/2", 2, 5, 7)
    g = compute_grid(p, 6, 6)
    assert all(g[m, 0] == p.A**m and g[0, m] == p.B**m for m in range(7))


@settings(max_examples=25)
@given(params_strategy())
def test_grid_satisfies_recurrence(p):
    N = 30
    g = compute_grid(p, N, N)
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            assert g[m, n] == p.alpha * g[m - 1, n] + p.beta * g[m, n - 1] + p.gamma * g[m - 1, n - 1]


@settings(max_examples=15)
@given(params_strategy())
def test_path_oracle_small(p):
    g = compute_grid(p, 6, 6)
    for m in range(7):
        for n in range(7 - m):
            assert enumerate_paths_oracle(p, m, n) == g[m, n]


def test_path_oracle_limit():
    with pytest.raises(GridSizeError):
        enumerate_paths_oracle(Params.classic(), 8, 8)


def test_cell_budget():
    with pytest.raises(GridSizeError):
        compute_grid(Params.classic(), 100, 100, cell_budget=1000)


@given(params_strategy())
def test_diagonal_matches_grid(p):
    assert compute_diagonal(p, 12).values == compute_grid(p, 12, 12).diagonal()


@given(st.integers(0, 10), st.integers(0, 10))
def test_classic_binomial_forms(m, n):
    d = compute_grid(Params.classic(), m, n)[m, n]
    assert classic_closed_forms(m, n) == (d, d)


@given(rationals(-5, 5), rationals(-5, 5), rationals(-5, 5), st.integers(0, 8), st.integers(0, 8))
def test_weighted_closed_form(a, b, g, m, n):
    p = Params.weighted(a, b, g)
    assert closed_form_W(p, m, n) == compute_grid(p, m, n)[m, n]


def test_central_double_factorial():
    diag = compute_diagonal(Params.classic(), 40).values
    assert [central_double_factorial(n) for n in range(41)] == diag


@given(rationals(), rationals(), rationals())
def test_both_zero_closed_form(A, B, g):
    p = Params(A, B, 0, 0, g)
    grid = compute_grid(p, 6, 7)
    assert all(grid[m, n] == both_zero_closed_form(p, m, n) for m in range(7) for n in range(8))


@settings(max_examples=20)
@given(nonneg_params())
def test_pqr_decomposition(p):
    norm = normalize(p)
    if norm.kind != "full":
        with pytest.raises(ParameterError):
            decompose_pqr(p, 3, 3)
        return
    N = 12
    whole = compute_grid(norm.unit_params(), N, N)
    P, Q, R = decompose_pqr(p, N, N)
    assert all(whole[m, n] == P[m, n] + Q[m, n] + R[m, n] for m in range(N + 1) for n in range(N + 1))


def test_r_part_is_zero_boundary_delannoy():
    _, _, R = decompose_pqr(Params.classic(), 3, 3)
    assert R[1, 1] == 1
    assert R[2, 2] == 3
    assert R[0, 3] == 0 and R[3, 0] == 0


@settings(max_examples=20)
@given(rationals(0, 8), rationals(0, 8))
def test_SGt_decomposition(A, g):
    if A == 1:
        with pytest.raises(ParameterError):
            decompose_SGt(A, g, 3)
        return
    N = 12
    p = Params(A, 1, 1, 1, g)
    P, _, _ = decompose_pqr(p, N, N)
    S, G, T = decompose_SGt(A, g, N)
    assert all(P[m, n] == S[m, n] + G[m, n] - T[m, n] for m in range(N + 1) for n in range(N + 1))


def test_G_is_geometric_solution():
    A, g = Fraction(3), Fraction(2)
    t = (A + g) / (A - 1)
    assert A * t == A + t + g
    _, G, _ = decompose_SGt(A, g, 5)
    assert all(G[m, n] == G[m - 1, n] + G[m, n - 1] + g * G[m - 1, n - 1] for m in range(1, 6) for n in range(1, 6))


def test_fibonacci():
    assert [fibonacci(k) for k in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_custom_boundary_diagonals():
    unit = Params.classic()
    assert compute_diagonal_custom(unit, fibonacci_boundary(), 8).values == FIB_DIAGONAL
    assert compute_diagonal_custom(unit, factorial_boundary(), 10).values == FACTORIAL_DIAGONAL


@pytest.mark.parametrize("boundary", [fibonacci_boundary, factorial_boundary, powpow_boundary])
def test_boundary_sum_oracle(boundary):
    p = Params(1, 1, 2, 3, "1/2")
    b = boundary()
    g = compute_grid_custom(p, b, 7, 7)
    assert all(boundary_sum_oracle(p, b, m, n) == g[m, n] for m in range(8) for n in range(8))


@settings(max_examples=20)
@given(params_strategy())
def test_geometric_boundary_equals_plain_grid(p):
    assert compute_grid_custom(p, geometric_boundary(p), 6, 6).cells == compute_grid(p, 6, 6).cells


def test_sequence_boundary():
    b = sequence_boundary([1, 2, 3])
    assert compute_grid_custom(Params.classic(), b, 2, 2)[1, 1] == 2 + 2 + 1
    with pytest.raises(ParameterError):
        compute_grid_custom(Params.classic(), b, 5, 5)


def test_corner_mismatch():
    from delannoy.grid import Boundary

    with pytest.raises(ParameterError):
        Boundary(lambda n: Fraction(1), lambda m: Fraction(2)).materialize(3)


@pytest.mark.parametrize("p", [Params.classic(), Params(5, 4, 3, 2, 1), Params(2, 4, 1, 1, "8/5"), Params("1/3", 7, "5/2", "1/4", 3)])
def test_xfloat_sweep_accuracy(p):
    exact = compute_diagonal(p, 200).values
    approx = compute_diagonal_xfloat(p, 200)
    for k in range(201):
        rel = abs(approx[k].log2_abs() - math.log2(exact[k])) * math.log(2)
        assert rel <= 1e-10, k


def test_xfloat_classic_value():
    assert float(compute_diagonal_xfloat(Params.classic(), 8)[8]) == pytest.approx(265729, rel=1e-14)
