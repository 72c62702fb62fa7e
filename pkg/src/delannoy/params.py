"""Parameters of the weighted Delannoy array and their normal forms.

The array is

    f[m][n] = A**m * B**n                                     if m*n == 0
    f[m][n] = alpha*f[m-1][n] + beta*f[m][n-1] + gamma*f[m-1][n-1]   otherwise

and every parameter is held as an exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+)|\.(\d+))?$")
MAX_FRACTION_DIGITS = 18


class ParameterError(ValueError):
    """Raised for malformed literals or parameters outside an operation's domain."""


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]`` or ``[-]digits.digits`` exactly.

    Decimal literals go through their power-of-ten denominator, never
    through a binary float.
    """
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ParameterError(f"malformed rational literal: {text!r}")
    sign, whole, den, frac = match.groups()
    if den is not None:
        if int(den) == 0:
            raise ParameterError(f"zero denominator in {text!r}")
        value = Fraction(int(whole), int(den))
    elif frac is not None:
        if len(frac) > MAX_FRACTION_DIGITS:
            raise ParameterError(
                f"decimal literal {text!r} has more than {MAX_FRACTION_DIGITS} fractional digits"
            )
        value = Fraction(int(whole + frac), 10 ** len(frac))
    else:
        value = Fraction(int(whole))
    return -value if sign == "-" else value


def format_rational(x: Fraction) -> str:
    """Canonical literal: ``p`` or ``p/q`` with q > 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise ParameterError("floats are not accepted as exact parameters; pass a string or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class Params:
    A: Fraction
    B: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("A", "B", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, A, B, alpha, beta, gamma) -> "Params":
        return cls(A, B, alpha, beta, gamma)

    @classmethod
    def classic(cls) -> "Params":
        return cls(1, 1, 1, 1, 1)

    @classmethod
    def weighted(cls, alpha, beta, gamma) -> "Params":
        """The classical weighted case, boundary weights equal to step weights."""
        return cls(alpha, beta, alpha, beta, gamma)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.alpha, self.beta, self.gamma)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.as_tuple())

    def swapped(self) -> "Params":
        """Transpose of the array: f[m][n] -> f[n][m]."""
        return Params(self.B, self.A, self.beta, self.alpha, self.gamma)

    def to_dict(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in zip(("A", "B", "alpha", "beta", "gamma"), self.as_tuple())}

    def __str__(self) -> str:
        return "{" + ", ".join(format_rational(x) for x in self.as_tuple()) + "}"


FULL = "full"
ROW_ONLY = "row_only"  # alpha != 0 == beta
COL_ONLY = "col_only"  # beta != 0 == alpha
BOTH_ZERO = "both_zero"


@dataclass(frozen=True)
class NormalizedParams:
    """Parameters after dividing f[m][n] by scale_row**m * scale_col**n.

    A zero step weight keeps its factor at 1 in the scaling, so for
    ``kind == "both_zero"`` the original values are carried unchanged.
    """

    A_hat: Fraction
    B_hat: Fraction
    gamma_hat: Fraction
    scale_row: Fraction
    scale_col: Fraction
    kind: str

    def unit_params(self) -> Params:
        """Params of the normalized array (step weights in {0, 1})."""
        a = Fraction(0) if self.scale_row == 0 else Fraction(1)
        b = Fraction(0) if self.scale_col == 0 else Fraction(1)
        return Params(self.A_hat, self.B_hat, a, b, self.gamma_hat)

    def row_factor(self) -> Fraction:
        return self.scale_row if self.scale_row != 0 else Fraction(1)

    def col_factor(self) -> Fraction:
        return self.scale_col if self.scale_col != 0 else Fraction(1)

    def denormalize(self, m: int, n: int, value: Fraction) -> Fraction:
        return value * self.row_factor() ** m * self.col_factor() ** n


def normalize(p: Params) -> NormalizedParams:
    a, b = p.alpha, p.beta
    if a != 0 and b != 0:
        return NormalizedParams(p.A / a, p.B / b, p.gamma / (a * b), a, b, FULL)
    if a != 0:
        return NormalizedParams(p.A / a, p.B, p.gamma / a, a, Fraction(0), ROW_ONLY)
    if b != 0:
        return NormalizedParams(p.A, p.B / b, p.gamma / b, Fraction(0), b, COL_ONLY)
    return NormalizedParams(p.A, p.B, p.gamma, Fraction(0), Fraction(0), BOTH_ZERO)


def is_geometric(p: Params) -> bool:
    """True iff f[m][n] == A**m * B**n for all m, n.

    f[1][1] = alpha*B + beta*A + gamma must equal A*B, and that single
    condition propagates by induction; it covers every zero pattern of
    alpha and beta at once.
    """
    return p.A * p.B == p.beta * p.A + p.alpha * p.B + p.gamma


def _require_nonnegative(p: Params) -> None:
    if not p.is_nonnegative():
        raise ParameterError(f"operation requires nonnegative parameters, got {p}")


def growth_threshold(p: Params) -> float:
    """alpha*beta + sqrt(alpha*beta*(alpha*beta + gamma)) as a float."""
    _require_nonnegative(p)
    ab = p.alpha * p.beta
    return float(ab) + math.sqrt(float(ab * (ab + p.gamma)))


def compare_to_threshold(p: Params, x: RationalLike) -> int:
    """Exact sign of ``x - growth_threshold(p)``: -1, 0 or 1."""
    _require_nonnegative(p)
    x = as_rational(x)
    ab = p.alpha * p.beta
    if x < ab:
        return -1
    lhs = (x - ab) ** 2
    rhs = ab * (ab + p.gamma)
    return (lhs > rhs) - (lhs < rhs)
