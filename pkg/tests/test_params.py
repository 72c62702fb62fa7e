import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonneg_params, params_strategy, rationals
from delannoy.grid import compute_grid
from delannoy.params import (
    BOTH_ZERO,
    COL_ONLY,
    FULL,
    ROW_ONLY,
    ParameterError,
    Params,
    as_rational,
    compare_to_threshold,
    format_rational,
    growth_threshold,
    is_geometric,
    normalize,
    parse_rational,
)


@pytest.mark.parametrize(
    "text,value",
    [
        ("3", Fraction(3)),
        ("-7", Fraction(-7)),
        ("8/5", Fraction(8, 5)),
        ("-27/20", Fraction(-27, 20)),
        ("21.55", Fraction(431, 20)),
        ("+0.1", Fraction(1, 10)),
        ("6/4", Fraction(3, 2)),
    ],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1.2.3", "1e5", "0x10", "1/-2", "--1", "1." + "1" * 19])
def test_parse_rational_rejects(text):
    with pytest.raises(ParameterError):
        parse_rational(text)


def test_decimal_is_exact_not_binary():
    assert parse_rational("0.1") * 3 == parse_rational("0.3")


def test_floats_rejected():
    with pytest.raises(ParameterError):
        as_rational(0.5)


@given(rationals(-10**6, 10**6, 10**4))
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_params_str_and_dict():
    p = Params(2, -4, -4, 3, "431/20")
    assert str(p) == "{2, -4, -4, 3, 431/20}"
    assert p.to_dict()["gamma"] == "431/20"
    assert Params.weighted(2, 1, 3).as_tuple() == (2, 1, 2, 1, 3)


@pytest.mark.parametrize(
    "p,kind,hat",
    [
        (Params(5, 4, 3, 2, 1), FULL, (Fraction(5, 3), Fraction(2), Fraction(1, 6))),
        (Params(5, 4, 3, 0, 1), ROW_ONLY, (Fraction(5, 3), Fraction(4), Fraction(1, 3))),
        (Params(5, 4, 0, 2, 1), COL_ONLY, (Fraction(5), Fraction(2), Fraction(1, 2))),
        (Params(5, 4, 0, 0, 1), BOTH_ZERO, (Fraction(5), Fraction(4), Fraction(1))),
    ],
)
def test_normalize_kinds(p, kind, hat):
    norm = normalize(p)
    assert norm.kind == kind
    assert (norm.A_hat, norm.B_hat, norm.gamma_hat) == hat


@given(params_strategy())
def test_normalize_denormalize_roundtrip(p):
    norm = normalize(p)
    N = 5
    g = compute_grid(p, N, N)
    h = compute_grid(norm.unit_params(), N, N)
    for m in range(N + 1):
        for n in range(N + 1):
            assert norm.denormalize(m, n, h[m, n]) == g[m, n]


@given(params_strategy())
def test_geometric_criterion_against_grid(p):
    g = compute_grid(p, 6, 6)
    everywhere = all(g[m, n] == p.A**m * p.B**n for m in range(7) for n in range(7))
    assert everywhere == is_geometric(p)


def test_geometric_zero_patterns():
    # alpha = 0: f[1][1] = beta A + gamma must equal A B
    assert is_geometric(Params(2, "5/2", 0, 1, 3))
    assert is_geometric(Params("10/7", 7, 1, 0, 3))
    assert is_geometric(Params(2, 3, 0, 0, 6))
    assert not is_geometric(Params(2, 5, 0, 1, 4))


def test_threshold_value():
    assert growth_threshold(Params.classic()) == pytest.approx(1 + math.sqrt(2))
    with pytest.raises(ParameterError):
        growth_threshold(Params(1, 1, -1, 1, 1))


def test_threshold_exact_equality():
    # alpha beta = 1, gamma = 3: T = 1 + 2 = 3 exactly
    p = Params(1, 1, 1, 1, 3)
    assert compare_to_threshold(p, 3) == 0
    assert compare_to_threshold(p, "2999/1000") == -1
    assert compare_to_threshold(p, "3001/1000") == 1


@given(nonneg_params(), rationals(0, 40, 7))
def test_threshold_compare_matches_float_away_from_ties(p, x):
    t = growth_threshold(p)
    if abs(float(x) - t) > 1e-9:
        assert compare_to_threshold(p, x) == (1 if float(x) > t else -1)


@given(params_strategy())
def test_swapped_is_transpose(p):
    g, h = compute_grid(p, 4, 5), compute_grid(p.swapped(), 5, 4)
    assert all(g[m, n] == h[n, m] for m in range(5) for n in range(6))
