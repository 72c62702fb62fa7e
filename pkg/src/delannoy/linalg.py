"""Exact nullspace of rational matrices via fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _integer_rows(M: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # scaling a row by a nonzero constant leaves the nullspace unchanged
    rows = []
    for row in M:
        row = [Fraction(x) for x in row]
        d = math.lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * d) for x in row])
    return rows


def bareiss_echelon(M: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form with integer entries, and the pivot columns.

    Each elimination step divides exactly by the previous pivot, so entries
    stay bounded by minors of the input instead of growing geometrically.
    """
    A = _integer_rows(M)
    if not A:
        return [], []
    n_rows, n_cols = len(A), len(A[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        k = next((i for i in range(r, n_rows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        piv = A[r][c]
        for i in range(r + 1, n_rows):
            lead = A[i][c]
            for j in range(c, n_cols):
                q, rem = divmod(piv * A[i][j] - lead * A[r][j], prev)
                if rem:
                    raise ArithmeticError("Bareiss step was not exact")
                A[i][j] = q
        # entries left of the pivot column in lower rows are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(M: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    if n_cols is None:
        n_cols = len(M[0]) if M else 0
    if not M:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    E, pivots = bareiss_echelon(M)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((E[r][j] * v[j] for j in range(c + 1, n_cols)), Fraction(0))
            v[c] = -s / E[r][c]
        basis.append(v)
    return basis


def mat_vec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M]
