"""Coefficient table of the second-order ODE satisfied by the diagonal series.

With alpha = beta = 1 the diagonal G(z) = sum f[n][n] z**n solves

    q0(z) G + z q1(z) G' + z**2 q2(z) G'' = c(z),

qi(z) = sum_j q{i}{j} z**j (j <= 4) and c(z) = c0 + c1 z + c2 z**2.  Each
entry below is a polynomial in A, B and g (= gamma), kept as a plain
expression string and expanded once by :func:`table_polynomials`.
"""

from __future__ import annotations

import ast
import functools
from fractions import Fraction

ODE_TABLE: dict[str, str] = {
    "q00": (
        "- (-1 + A)*(-1 + B)*(20*A*B - 10*A**2*B - 10*A*B**2 + 4*A**2*B**2 + 10*A*g - "
        "5*A**2*g + 10*B*g - A**2*B*g - 5*B**2*g - A*B**2*g + 6*g**2 - A*g**2 - B*g**2)"
    ),
    "q01": (
        "-2*(-1 + A)*(-1 + B)*(-2 + A + B)*(6*A*B + 3*A*g + 3*B*g + 6*A*B*g + 2*g**2 + "
        "2*A*g**2 + 2*B*g**2 + A*B*g**2 + g**3)"
    ),
    "q02": (
        "-8*A**3*B + 4*A**4*B + 12*A**3*B**2 - 8*A**4*B**2 - 8*A*B**3 + 12*A**2*B**3 - "
        "4*A**3*B**3 + 2*A**4*B**3 + 4*A*B**4 - 8*A**2*B**4 + 2*A**3*B**4 - 4*A**3*g + "
        "2*A**4*g - 12*A**2*B*g + 4*A**3*B*g - 2*A**4*B*g - 12*A*B**2*g + 36*A**2*B**2*g - "
        "4*A**3*B**2*g - 5*A**4*B**2*g - 4*B**3*g + 4*A*B**3*g - 4*A**2*B**3*g + "
        "4*A**3*B**3*g + A**4*B**3*g + 2*B**4*g - 2*A*B**4*g - 5*A**2*B**4*g + A**3*B**4*g - "
        "8*A**2*g**2 + 2*A**3*g**2 - 4*A*B*g**2 + 4*A**2*B*g**2 - 4*A**3*B*g**2 - A**4*B*g**2 "
        "- 8*B**2*g**2 + 4*A*B**2*g**2 + 28*A**2*B**2*g**2 - 6*A**3*B**2*g**2 - "
        "A**4*B**2*g**2 + 2*B**3*g**2 - 4*A*B**3*g**2 - 6*A**2*B**3*g**2 + 4*A**3*B**3*g**2 - "
        "A*B**4*g**2 - A**2*B**4*g**2 - 2*A*g**3 - 5*A**2*g**3 + A**3*g**3 - 2*B*g**3 + "
        "4*A*B*g**3 + 6*A**2*B*g**3 - 4*A**3*B*g**3 - 5*B**2*g**3 + 6*A*B**2*g**3 + "
        "4*A**2*B**2*g**3 + B**3*g**3 - 4*A*B**3*g**3 - A*g**4 - A**2*g**4 - B*g**4 + "
        "4*A*B*g**4 - B**2*g**4"
    ),
    "q03": (
        "2*A*B*(A + g)*(B + g)*(2*A*B + A*g + B*g)*(6 - 3*A - 3*B + 2*A*B + 6*g - 2*A*g - "
        "2*B*g + A*B*g + g**2)"
    ),
    "q04": (
        "-A*B*g**2*(A + g)*(B + g)*(20*A*B - 10*A**2*B - 10*A*B**2 + 6*A**2*B**2 + 10*A*g - "
        "5*A**2*g + 10*B*g + A**2*B*g - 5*B**2*g + A*B**2*g + 4*g**2 + A*g**2 + B*g**2)"
    ),
    "q10": (
        "(-1 + A)*(-1 + B)*(20*A*B - 10*A**2*B - 10*A*B**2 + 4*A**2*B**2 + 10*A*g - 5*A**2*g "
        "+ 10*B*g - A**2*B*g - 5*B**2*g - A*B**2*g + 6*g**2 - A*g**2 - B*g**2)"
    ),
    "q11": (
        "-32*A*B + 48*A**2*B - 12*A**3*B - 2*A**4*B + 48*A*B**2 - 68*A**2*B**2 + + "
        "14*A**3*B**2 + 2*A**4*B**2 - 12*A*B**3 + 14*A**2*B**3 - 2*A*B**4 + 2*A**2*B**4 - "
        "16*A*g + 24*A**2*g - 6*A**3*g - A**4*g - 16*B*g + 16*A*B*g + 10*A**2*B*g - "
        "8*A**3*B*g + 24*B**2*g + 10*A*B**2*g - 60*A**2*B**2*g + 18*A**3*B**2*g + A**4*B**2*g "
        "- 6*B**3*g - 8*A*B**3*g + 18*A**2*B**3*g - B**4*g + A**2*B**4*g - 12*g**2 + 8*A*g**2 "
        "+ 12*A**2*g**2 - 6*A**3*g**2 + 8*B*g**2 - 14*A**2*B*g**2 + 4*A**3*B*g**2 + "
        "12*B**2*g**2 - 14*A*B**2*g**2 - 4*A**2*B**2*g**2 + 4*A**3*B**2*g**2 - 6*B**3*g**2 + "
        "4*A*B**3*g**2 + 4*A**2*B**3*g**2 - 6*g**3 + 10*A*g**3 - 3*A**2*g**3 + 10*B*g**3 - "
        "16*A*B*g**3 + 4*A**2*B*g**3 - 3*B**2*g**3 + 4*A*B**2*g**3"
    ),
    "q12": (
        "32*A**3*B - 16*A**4*B - 48*A**3*B**2 + 28*A**4*B**2 + 32*A*B**3 - 48*A**2*B**3 + "
        "20*A**3*B**3 - 6*A**4*B**3 - 16*A*B**4 + 28*A**2*B**4 - 6*A**3*B**4 - 4*A**4*B**4 + "
        "16*A**3*g - 8*A**4*g + 48*A**2*B*g - 16*A**3*B*g + 4*A**4*B*g + 48*A*B**2*g - "
        "144*A**2*B**2*g + 14*A**3*B**2*g + 19*A**4*B**2*g + 16*B**3*g - 16*A*B**3*g + "
        "14*A**2*B**3*g - 4*A**3*B**3*g - 11*A**4*B**3*g - 8*B**4*g + 4*A*B**4*g + "
        "19*A**2*B**4*g - 11*A**3*B**4*g + 20*A**2*g**2 + 4*A**3*g**2 - 4*A**4*g**2 + "
        "28*A*B*g**2 - 10*A**2*B*g**2 - 8*A**3*B*g**2 + 9*A**4*B*g**2 + 20*B**2*g**2 - "
        "10*A*B**2*g**2 - 108*A**2*B**2*g**2 + 32*A**3*B**2*g**2 - 3*A**4*B**2*g**2 + "
        "4*B**3*g**2 - 8*A*B**3*g**2 + 32*A**2*B**3*g**2 - 24*A**3*B**3*g**2 - 4*B**4*g**2 + "
        "9*A*B**4*g**2 - 3*A**2*B**4*g**2 + 2*A*g**3 + 17*A**2*g**3 - 3*A**3*g**3 + 2*B*g**3 "
        "+ 20*A*B*g**3 - 40*A**2*B*g**3 + 12*A**3*B*g**3 + 17*B**2*g**3 - 40*A*B**2*g**3 - "
        "6*A**3*B**2*g**3 - 3*B**3*g**3 + 12*A*B**3*g**3 - 6*A**2*B**3*g**3 + A*g**4 + "
        "3*A**2*g**4 + B*g**4 - 6*A**2*B*g**4 + 3*B**2*g**4 - 6*A*B**2*g**4"
    ),
    "q13": (
        "96*A**3*B**3 - 48*A**4*B**3 - 48*A**3*B**4 + 28*A**4*B**4 + 144*A**3*B**2*g - "
        "72*A**4*B**2*g + 144*A**2*B**3*g - 48*A**3*B**3*g + 8*A**4*B**3*g - 72*A**2*B**4*g + "
        "8*A**3*B**4*g + 14*A**4*B**4*g + 28*A**3*B*g**2 - 14*A**4*B*g**2 + "
        "212*A**2*B**2*g**2 + 34*A**3*B**2*g**2 - 48*A**4*B**2*g**2 + 28*A*B**3*g**2 + "
        "34*A**2*B**3*g**2 - 32*A**3*B**3*g**2 + 22*A**4*B**3*g**2 - 14*A*B**4*g**2 - "
        "48*A**2*B**4*g**2 + 22*A**3*B**4*g**2 - 10*A**3*g**3 + 5*A**4*g**3 + 38*A**2*B*g**3 "
        "+ 24*A**3*B*g**3 - 18*A**4*B*g**3 + 38*A*B**2*g**3 + 204*A**2*B**2*g**3 - "
        "62*A**3*B**2*g**3 + 3*A**4*B**2*g**3 - 10*B**3*g**3 + 24*A*B**3*g**3 - "
        "62*A**2*B**3*g**3 + 32*A**3*B**3*g**3 + 5*B**4*g**3 - 18*A*B**4*g**3 + "
        "3*A**2*B**4*g**3 - 14*A**2*g**4 + 4*A**3*g**4 + 66*A**2*B*g**4 - 20*A**3*B*g**4 - "
        "14*B**2*g**4 + 66*A*B**2*g**4 + 4*A**2*B**2*g**4 + 4*A**3*B**2*g**4 + 4*B**3*g**4 - "
        "20*A*B**3*g**4 + 4*A**2*B**3*g**4 - 4*A*g**5 - A**2*g**5 - 4*B*g**5 + 16*A*B*g**5 + "
        "4*A**2*B*g**5 - B**2*g**5 + 4*A*B**2*g**5"
    ),
    "q14": (
        "-A*B*g**2*(A + g)*(B + g)*(36*A*B - 18*A**2*B - 18*A*B**2 + 10*A**2*B**2 + 18*A*g - "
        "9*A**2*g + 18*B*g + A**2*B*g - 9*B**2*g + A*B**2*g + 8*g**2 + A*g**2 + B*g**2)"
    ),
    "q20": (
        "-2*(-1 + A)*(-1 + B)*(-2*A + A**2 - g)*(-2*B + B**2 - g)"
    ),
    "q21": (
        "2*(-2*A + A**2 - g)*(-2*B + B**2 - g)*(4 - 4*A - A**2 - 4*B + 4*A*B + A**2*B - B**2 "
        "+ A*B**2 + 2*g - 3*A*g - 3*B*g + 4*A*B*g)"
    ),
    "q22": (
        "-2*(-2*A + A**2 - g)*(-2*B + B**2 - g)*(-4*A**2 + 4*A**2*B - 4*B**2 + 4*A*B**2 + "
        "A**2*B**2 - 4*A*g - 2*A**2*g - 4*B*g + 8*A*B*g + 3*A**2*B*g - 2*B**2*g + 3*A*B**2*g "
        "+ g**2 - 3*A*g**2 - 3*B*g**2 + 6*A*B*g**2)"
    ),
    "q23": (
        "2*(-2*A + A**2 - g)*(-2*B + B**2 - g)*(4*A**2*B**2 + 4*A**2*B*g + 4*A*B**2*g + "
        "2*A**2*B**2*g - A**2*g**2 + 4*A*B*g**2 + 3*A**2*B*g**2 - B**2*g**2 + 3*A*B**2*g**2 - "
        "A*g**3 - B*g**3 + 4*A*B*g**3)"
    ),
    "q24": (
        "-2*A*B*(-2*A + A**2 - g)*(-2*B + B**2 - g)*g**2*(A + g)*(B + g)"
    ),
    "c0": (
        "-((-1 + A)*(-1 + B)*(20*A*B - 10*A**2*B - 10*A*B**2 + 4*A**2*B**2 + 10*A*g - "
        "5*A**2*g + 10*B*g - A**2*B*g - 5*B**2*g - A*B**2*g + 6*g**2 - A*g**2 - B*g**2))"
    ),
    "c1": (
        "-2*(-1 + A)*(-1 + B)*(-2 + A + B)*(6*A*B + 3*A*g + 3*B*g + 6*A*B*g + 2*g**2 + "
        "2*A*g**2 + 2*B*g**2 + A*B*g**2 + g**3)"
    ),
    "c2": (
        "(2 - A - B + A*B + g)*(-2*A**3*B + 2*A**3*B**2 - 2*A*B**3 + 2*A**2*B**3 - A**3*g - "
        "3*A**2*B*g - 3*A*B**2*g + 6*A**2*B**2*g + A**3*B**2*g - B**3*g + A**2*B**3*g - "
        "2*A**2*g**2 - 2*B**2*g**2 + 4*A**2*B**2*g**2 - A**2*g**3 + A**2*B*g**3 - B**2*g**3 + "
        "A*B**2*g**3)"
    ),
}

# exponent triple (a, b, c) of A**a B**b g**c -> integer coefficient
Monomials = dict[tuple[int, int, int], int]

_VARS = {"A": (1, 0, 0), "B": (0, 1, 0), "g": (0, 0, 1)}


def _add(p: Monomials, q: Monomials, sign: int = 1) -> Monomials:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _mul(p: Monomials, q: Monomials) -> Monomials:
    out: Monomials = {}
    for (a1, b1, c1), v1 in p.items():
        for (a2, b2, c2), v2 in q.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = out.get(key, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _expand(node: ast.AST) -> Monomials:
    if isinstance(node, ast.Expression):
        return _expand(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return {(0, 0, 0): node.value} if node.value else {}
    if isinstance(node, ast.Name) and node.id in _VARS:
        return {_VARS[node.id]: 1}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _expand(node.operand)
        return {k: -v for k, v in inner.items()} if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("only integer powers are allowed")
            base, out = _expand(node.left), {(0, 0, 0): 1}
            for _ in range(node.right.value):
                out = _mul(out, base)
            return out
        left, right = _expand(node.left), _expand(node.right)
        if isinstance(node.op, ast.Add):
            return _add(left, right)
        if isinstance(node.op, ast.Sub):
            return _add(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _mul(left, right)
    raise ValueError(f"unsupported syntax in table entry: {ast.dump(node)}")


@functools.lru_cache(maxsize=None)
def table_polynomials() -> dict[str, Monomials]:
    """Every table entry expanded into integer monomials in (A, B, g)."""
    return {k: _expand(ast.parse(v, mode="eval")) for k, v in ODE_TABLE.items()}


def evaluate_entry(key: str, A: Fraction, B: Fraction, g: Fraction) -> Fraction:
    total = Fraction(0)
    for (a, b, c), v in table_polynomials()[key].items():
        total += v * A**a * B**b * g**c
    return total
