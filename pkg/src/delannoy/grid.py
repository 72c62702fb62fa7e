"""Exact and extended-range computation of the weighted Delannoy array.

Exact sweeps run on integers: with ``d`` the common denominator of the
parameters, ``g[m][n] = d**(m+n) * f[m][n]`` obeys the same recurrence with
integer weights ``(d*alpha, d*beta, d*d*gamma)`` and integer boundaries, so
no gcd work happens inside the double loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from .params import BOTH_ZERO, FULL, ParameterError, Params, normalize
from .xfloat import XArray, XFloat, xa_add

DEFAULT_CELL_BUDGET = 10**7
PATH_ORACLE_LIMIT = 14


class GridSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    params: Params | None
    max_m: int
    max_n: int
    cells: list[list[Fraction]] = field(repr=False)

    def __getitem__(self, mn: tuple[int, int]) -> Fraction:
        m, n = mn
        return self.cells[m][n]

    def diagonal(self) -> list[Fraction]:
        return [self.cells[k][k] for k in range(min(self.max_m, self.max_n) + 1)]


@dataclass(frozen=True)
class DiagonalSeq:
    params: Params | None
    values: list[Fraction]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True)
class Boundary:
    """Boundary values: ``row(n) = f[0][n]`` and ``col(m) = f[m][0]``."""

    row: Callable[[int], Fraction]
    col: Callable[[int], Fraction]
    name: str = "custom"

    def materialize(self, size: int) -> tuple[list[Fraction], list[Fraction]]:
        rows = [Fraction(self.row(n)) for n in range(size + 1)]
        cols = [Fraction(self.col(m)) for m in range(size + 1)]
        if rows[0] != cols[0]:
            raise ParameterError(f"boundary corner mismatch: row(0)={rows[0]} col(0)={cols[0]}")
        return rows, cols


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_boundary() -> Boundary:
    return Boundary(lambda n: Fraction(fibonacci(n)), lambda m: Fraction(fibonacci(m)), "fib")


def factorial_boundary() -> Boundary:
    return Boundary(lambda n: Fraction(math.factorial(n)), lambda m: Fraction(math.factorial(m)), "factorial")


def powpow_boundary() -> Boundary:
    # 0**0 == 1 in Python, matching the corner convention
    return Boundary(lambda n: Fraction(n**n), lambda m: Fraction(m**m), "powpow")


def geometric_boundary(p: Params) -> Boundary:
    return Boundary(lambda n: p.B**n, lambda m: p.A**m, "geometric")


def sequence_boundary(values: Sequence[Fraction], name: str = "file") -> Boundary:
    """Symmetric boundary from an explicit list (index ascending)."""
    vals = [Fraction(v) for v in values]

    def get(k: int) -> Fraction:
        if k >= len(vals):
            raise ParameterError(f"boundary sequence {name!r} has only {len(vals)} terms, index {k} requested")
        return vals[k]

    return Boundary(get, get, name)


def _common_denominator(values: Sequence[Fraction]) -> int:
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d


def _check_budget(max_m: int, max_n: int, budget: int) -> None:
    if max_m < 0 or max_n < 0:
        raise GridSizeError("grid dimensions must be nonnegative")
    if (max_m + 1) * (max_n + 1) > budget:
        raise GridSizeError(f"{max_m + 1}x{max_n + 1} grid exceeds the cell budget {budget}")


def _integer_rows(
    weights: tuple[Fraction, Fraction, Fraction],
    rows0: Sequence[Fraction],
    cols0: Sequence[Fraction],
    max_m: int,
    max_n: int,
    bases: Sequence[Fraction] = (),
) -> Iterator[tuple[list[int], int, int]]:
    """Yield ``(g_row, d, D)`` for m = 0..max_m where f[m][n] = g_row[n] / (D * d**(m+n)).

    ``d`` clears the step weights and the geometric ``bases`` of the
    boundary; ``D`` is one constant factor for whatever boundary
    denominators remain.
    """
    alpha, beta, gamma = weights
    d = _common_denominator([alpha, beta, gamma, *bases])
    r = [rows0[n] * d**n for n in range(max_n + 1)]
    c = [cols0[m] * d**m for m in range(max_m + 1)]
    D = _common_denominator([*r, *c])
    a, b, cc = int(alpha * d), int(beta * d), int(gamma * d * d)
    row = [int(v * D) for v in r]
    yield row, d, D
    for m in range(1, max_m + 1):
        new = [0] * (max_n + 1)
        new[0] = int(c[m] * D)
        left = new[0]
        for n in range(1, max_n + 1):
            left = a * row[n] + b * left + cc * row[n - 1]
            new[n] = left
        row = new
        yield row, d, D


def _fraction_grid(weights, rows0, cols0, max_m, max_n, bases=()) -> list[list[Fraction]]:
    cells = []
    for m, (row, d, D) in enumerate(_integer_rows(weights, rows0, cols0, max_m, max_n, bases)):
        cells.append([Fraction(g, D * d ** (m + n)) for n, g in enumerate(row)])
    return cells


def compute_grid(p: Params, max_m: int, max_n: int, cell_budget: int = DEFAULT_CELL_BUDGET) -> Grid:
    _check_budget(max_m, max_n, cell_budget)
    rows0 = [p.B**n for n in range(max_n + 1)]
    cols0 = [p.A**m for m in range(max_m + 1)]
    cells = _fraction_grid((p.alpha, p.beta, p.gamma), rows0, cols0, max_m, max_n, (p.A, p.B))
    return Grid(p, max_m, max_n, cells)


def compute_grid_custom(
    p: Params, b: Boundary, max_m: int, max_n: int, cell_budget: int = DEFAULT_CELL_BUDGET
) -> Grid:
    """Same recurrence as :func:`compute_grid`; A and B in ``p`` are ignored."""
    _check_budget(max_m, max_n, cell_budget)
    rows0, cols0 = b.materialize(max(max_m, max_n))
    cells = _fraction_grid((p.alpha, p.beta, p.gamma), rows0, cols0, max_m, max_n)
    return Grid(p, max_m, max_n, cells)


def _diagonal_from_boundary(weights, rows0, cols0, n_max: int, bases=()) -> list[Fraction]:
    out = []
    for m, (row, d, D) in enumerate(_integer_rows(weights, rows0, cols0, n_max, n_max, bases)):
        out.append(Fraction(row[m], D * d ** (2 * m)))
    return out


def compute_diagonal(p: Params, n_max: int) -> DiagonalSeq:
    """f[k][k] for k <= n_max with a two-row sweep (O(n_max) memory)."""
    if n_max < 0:
        raise GridSizeError("n_max must be nonnegative")
    rows0 = [p.B**n for n in range(n_max + 1)]
    cols0 = [p.A**m for m in range(n_max + 1)]
    return DiagonalSeq(p, _diagonal_from_boundary((p.alpha, p.beta, p.gamma), rows0, cols0, n_max, (p.A, p.B)))


def compute_diagonal_custom(p: Params, b: Boundary, n_max: int) -> DiagonalSeq:
    if n_max < 0:
        raise GridSizeError("n_max must be nonnegative")
    rows0, cols0 = b.materialize(n_max)
    return DiagonalSeq(p, _diagonal_from_boundary((p.alpha, p.beta, p.gamma), rows0, cols0, n_max))


def diagonal_xfloat_sweep(p: Params, n_max: int, log2_scale_per_step: float = 0.0) -> list[XFloat]:
    """Anti-diagonal sweep of h[m][n] = f[m][n] * s**((m+n)/2), s = 2**log2_scale_per_step.

    Returns h[k][k] = s**k * f[k][k] for k = 0..n_max.
    """
    if n_max < 0:
        raise GridSizeError("n_max must be nonnegative")
    N = n_max
    half = XFloat.from_log2(log2_scale_per_step / 2.0)
    full = XFloat.from_log2(log2_scale_per_step)
    a = XFloat.from_fraction(p.alpha) * half
    b = XFloat.from_fraction(p.beta) * half
    c = XFloat.from_fraction(p.gamma) * full
    A = XFloat.from_fraction(p.A) * half
    B = XFloat.from_fraction(p.B) * half

    idx = np.arange(N + 1)
    prev2 = XArray.zeros(N + 1)  # anti-diagonal d-2, indexed by m
    prev = XArray.zeros(N + 1)
    prev[0] = XFloat.from_float(1.0)
    diag = [prev[0]]
    A_pow, B_pow = XFloat.from_float(1.0), XFloat.from_float(1.0)
    for d in range(1, 2 * N + 1):
        A_pow, B_pow = A_pow * A, B_pow * B
        # shifted[m] = prev[m-1]
        sh_prev = XArray(np.concatenate(([0.0], prev.mant[:-1])), np.concatenate(([-(2**62)], prev.exp[:-1])))
        sh_prev2 = XArray(np.concatenate(([0.0], prev2.mant[:-1])), np.concatenate(([-(2**62)], prev2.exp[:-1])))
        cur = xa_add(xa_add(sh_prev.scale(a), prev.scale(b)), sh_prev2.scale(c))
        valid = (idx >= max(0, d - N)) & (idx <= min(d, N))
        cur.mant[~valid] = 0.0
        cur.exp[~valid] = -(2**62)
        if d <= N:
            cur[0] = B_pow
            cur[d] = A_pow
        if d % 2 == 0:
            diag.append(cur[d // 2])
        prev2, prev = prev, cur
    return diag


def compute_diagonal_xfloat(p: Params, n_max: int, log2_scale_per_step: float = 0.0) -> list[XFloat]:
    return diagonal_xfloat_sweep(p, n_max, log2_scale_per_step)


def closed_form_W(p: Params, m: int, n: int) -> Fraction:
    """Binomial sum for the classical weighted numbers (boundary A=alpha, B=beta)."""
    a, b, g = p.alpha, p.beta, p.gamma
    return sum(
        (a ** (m - k) * b ** (n - k) * math.comb(n, k) * math.comb(m, k) * (a * b + g) ** k for k in range(min(m, n) + 1)),
        Fraction(0),
    )


def classic_closed_forms(m: int, n: int) -> tuple[Fraction, Fraction]:
    first = sum(math.comb(n, i) * math.comb(n + m - i, n) for i in range(m + 1))
    second = sum(2**i * math.comb(n, i) * math.comb(m, i) for i in range(m + 1))
    return Fraction(first), Fraction(second)


def _double_factorial_ratio(i: int) -> Fraction:
    """(2i-1)!! / (2i)!!, with (-1)!! = 0!! = 1."""
    return Fraction(math.comb(2 * i, i), 4**i)


def central_double_factorial(n: int) -> Fraction:
    """Central Delannoy number from its alternating double-factorial sum."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    total = sum(
        ((-1) ** i * 36**i * _double_factorial_ratio(i) * math.comb(i, n - i) for i in range(n + 1)),
        Fraction(0),
    )
    return Fraction((-1) ** n, 6**n) * total


def _unit_sweep(gamma: Fraction, rows0, cols0, max_m: int, max_n: int, bases=()) -> list[list[Fraction]]:
    return _fraction_grid((Fraction(1), Fraction(1), Fraction(gamma)), rows0, cols0, max_m, max_n, bases)


def decompose_pqr(p: Params, max_m: int, max_n: int) -> tuple[Grid, Grid, Grid]:
    """Split the normalized array into boundary-row, boundary-column and origin parts.

    Works on the alpha = beta = 1 normal form of ``p``; the three grids sum
    to that normalized array cell by cell.
    """
    norm = normalize(p)
    if norm.kind != FULL:
        raise ParameterError("decompose_pqr needs alpha*beta != 0")
    A, B, g = norm.A_hat, norm.B_hat, norm.gamma_hat
    size = max(max_m, max_n)
    zero = Fraction(0)
    p_rows = [zero] * (size + 1)
    p_cols = [zero] + [A**m for m in range(1, size + 1)]
    q_rows = [zero] + [B**n for n in range(1, size + 1)]
    q_cols = [zero] * (size + 1)
    r_rows = [Fraction(1)] + [zero] * size
    r_cols = [Fraction(1)] + [zero] * size
    unit = norm.unit_params()
    return (
        Grid(unit, max_m, max_n, _unit_sweep(g, p_rows, p_cols, max_m, max_n, (A,))),
        Grid(unit, max_m, max_n, _unit_sweep(g, q_rows, q_cols, max_m, max_n, (B,))),
        Grid(unit, max_m, max_n, _unit_sweep(g, r_rows, r_cols, max_m, max_n)),
    )


def decompose_SGt(A_hat, gamma_hat, max_size: int) -> tuple[Grid, Grid, Grid]:
    """S, G and t arrays whose combination S + G - t reproduces the row part."""
    A, g = Fraction(A_hat), Fraction(gamma_hat)
    if A == 1:
        raise ParameterError("decompose_SGt requires A_hat != 1")
    t = (A + g) / (A - 1)
    zero, one = Fraction(0), Fraction(1)
    N = max_size
    S = _unit_sweep(g, [zero] * (N + 1), [zero] + [one] * N, N, N)
    G = [[A**m * t**n for n in range(N + 1)] for m in range(N + 1)]
    T = _unit_sweep(g, [t**n for n in range(N + 1)], [one] * (N + 1), N, N, (t,))
    return Grid(None, N, N, S), Grid(None, N, N, G), Grid(None, N, N, T)


def both_zero_closed_form(p: Params, m: int, n: int) -> Fraction:
    """Closed form valid when alpha == beta == 0."""
    k = min(m, n)
    return p.gamma**k * p.A ** (m - k) * p.B ** (n - k)


def enumerate_paths_oracle(p: Params, m: int, n: int) -> Fraction:
    """Sum of path weights by explicit enumeration of every step sequence.

    East steps along the bottom axis weigh A, north steps along the left
    axis weigh B; off the axes they weigh alpha and beta.  Diagonal steps
    always weigh gamma.  Exponential in m + n.
    """
    if m < 0 or n < 0:
        raise ParameterError("m, n must be nonnegative")
    if m + n > PATH_ORACLE_LIMIT:
        raise GridSizeError(f"path enumeration limited to m + n <= {PATH_ORACLE_LIMIT}")
    total = Fraction(0)
    # explicit stack of (i, j, weight); no memoisation, every path is visited
    stack = [(0, 0, Fraction(1))]
    while stack:
        i, j, w = stack.pop()
        if i == m and j == n:
            total += w
            continue
        if i < m:
            stack.append((i + 1, j, w * (p.A if j == 0 else p.alpha)))
        if j < n:
            stack.append((i, j + 1, w * (p.B if i == 0 else p.beta)))
        if i < m and j < n:
            stack.append((i + 1, j + 1, w * p.gamma))
    return total


def free_path_weight(alpha, beta, gamma, dx: int, dy: int) -> Fraction:
    """Weighted count of unrestricted E/N/D step sequences covering (dx, dy)."""
    if dx < 0 or dy < 0:
        return Fraction(0)
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    total = Fraction(0)
    for k in range(min(dx, dy) + 1):
        multinomial = math.factorial(dx + dy - k) // (
            math.factorial(k) * math.factorial(dx - k) * math.factorial(dy - k)
        )
        total += multinomial * alpha ** (dx - k) * beta ** (dy - k) * gamma**k
    return total


def boundary_sum_oracle(p: Params, b: Boundary, m: int, n: int) -> Fraction:
    """Interior value as a sum over the boundary cells it is fed from.

    Every interior path leaves the axes exactly once: a north step from
    (i, 0) to (i, 1), a diagonal step from (i, 0) to (i+1, 1), or the mirror
    images from the left axis.  Past that point all steps are free, so the
    value is a closed binomial sum independent of the row sweep.
    """
    rows, cols = b.materialize(max(m, n))
    if m == 0:
        return rows[n]
    if n == 0:
        return cols[m]
    a, be, g = p.alpha, p.beta, p.gamma
    total = Fraction(0)
    for i in range(0, m + 1):  # leave the bottom axis from (i, 0), i >= 1 for north
        if i >= 1:
            total += cols[i] * be * free_path_weight(a, be, g, m - i, n - 1)
        if i <= m - 1:
            # diagonal step from (i, 0); the corner (0, 0) counts once here
            total += cols[i] * g * free_path_weight(a, be, g, m - i - 1, n - 1)
    for j in range(1, n + 1):  # leave the left axis from (0, j), j >= 1
        total += rows[j] * a * free_path_weight(a, be, g, m - 1, n - j)
        if j <= n - 1:
            total += rows[j] * g * free_path_weight(a, be, g, m - 1, n - j - 1)
    return total


BOUNDARIES = {
    "fib": fibonacci_boundary,
    "factorial": factorial_boundary,
    "powpow": powpow_boundary,
}
