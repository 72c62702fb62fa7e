"""Binary64 mantissa with a 64-bit binary exponent.

Diagonal values at n ~ 10**3 have hundreds of decimal digits and overflow a
plain double long before the asymptotic regime is reached.  ``XFloat``
keeps ``|mantissa|`` in [1, 2) (or exactly 0) and pushes the scale into an
integer exponent.  ``XArray`` is the same representation for numpy arrays,
used by the anti-diagonal sweep in :mod:`delannoy.grid`.

Subtraction of nearly equal values is allowed and loses relative accuracy
exactly as ordinary floating point does; nothing here hides cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

ZERO_EXP = -(2**62)
EXP_LIMIT = 2**62
# alignment shifts beyond this flush the smaller operand to zero
_SHIFT_FLOOR = -1100


class XFloatOverflow(OverflowError):
    pass


def _check_exp(e: int) -> int:
    if abs(e) >= EXP_LIMIT:
        raise XFloatOverflow(f"XFloat exponent {e} out of range")
    return e


@dataclass(frozen=True)
class XFloat:
    mantissa: float
    exponent: int

    @classmethod
    def make(cls, mantissa: float, exponent: int = 0) -> "XFloat":
        if mantissa == 0.0:
            return cls(0.0, ZERO_EXP)
        if not math.isfinite(mantissa):
            raise ValueError(f"non-finite mantissa {mantissa}")
        fr, ex = math.frexp(mantissa)
        return cls(fr * 2.0, _check_exp(exponent + ex - 1))

    @classmethod
    def from_float(cls, x: float) -> "XFloat":
        return cls.make(float(x), 0)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "XFloat":
        x = Fraction(x)
        if x == 0:
            return cls(0.0, ZERO_EXP)
        num, den = abs(x.numerator), x.denominator
        e = num.bit_length() - den.bit_length()
        scaled = Fraction(num, den * 2**e) if e >= 0 else Fraction(num * 2 ** (-e), den)
        out = cls.make(float(scaled), e)
        return -out if x < 0 else out

    @classmethod
    def from_log2(cls, log2_value: float) -> "XFloat":
        """2**log2_value, splitting off the integer part exactly."""
        whole = math.floor(log2_value)
        return cls.make(2.0 ** (log2_value - whole), whole)

    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def __neg__(self) -> "XFloat":
        return XFloat(-self.mantissa, self.exponent)

    def __add__(self, other: "XFloat") -> "XFloat":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        e = max(self.exponent, other.exponent)
        s = math.ldexp(self.mantissa, max(self.exponent - e, _SHIFT_FLOOR)) + math.ldexp(
            other.mantissa, max(other.exponent - e, _SHIFT_FLOOR)
        )
        return XFloat.make(s, e)

    def __sub__(self, other: "XFloat") -> "XFloat":
        return self + (-other)

    def __mul__(self, other: "XFloat") -> "XFloat":
        if self.is_zero() or other.is_zero():
            return XFloat(0.0, ZERO_EXP)
        return XFloat.make(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __truediv__(self, other: "XFloat") -> "XFloat":
        if other.is_zero():
            raise ZeroDivisionError("XFloat division by zero")
        if self.is_zero():
            return self
        return XFloat.make(self.mantissa / other.mantissa, self.exponent - other.exponent)

    def log2_abs(self) -> float:
        if self.is_zero():
            return -math.inf
        return self.exponent + math.log2(abs(self.mantissa))

    def __float__(self) -> float:
        if self.is_zero():
            return 0.0
        if self.exponent > 1023:
            return math.copysign(math.inf, self.mantissa)
        if self.exponent < -1100:
            return math.copysign(0.0, self.mantissa)
        return math.ldexp(self.mantissa, self.exponent)

    def __repr__(self) -> str:
        return f"XFloat({self.mantissa!r}, {self.exponent})"


class XArray:
    """Vector of XFloat values held as two numpy arrays."""

    __slots__ = ("mant", "exp")

    def __init__(self, mant: np.ndarray, exp: np.ndarray):
        self.mant = mant
        self.exp = exp

    @classmethod
    def zeros(cls, n: int) -> "XArray":
        return cls(np.zeros(n), np.full(n, ZERO_EXP, dtype=np.int64))

    @classmethod
    def normalized(cls, mant: np.ndarray, exp: np.ndarray) -> "XArray":
        fr, ex = np.frexp(mant)
        zero = mant == 0.0
        new_exp = np.where(zero, ZERO_EXP, exp + ex.astype(np.int64) - 1)
        if np.any(np.abs(new_exp[~zero]) >= EXP_LIMIT):
            raise XFloatOverflow("XArray exponent out of range")
        return cls(fr * 2.0, new_exp)

    def __getitem__(self, i: int) -> XFloat:
        return XFloat(float(self.mant[i]), int(self.exp[i]))

    def __setitem__(self, i: int, value: XFloat) -> None:
        self.mant[i] = value.mantissa
        self.exp[i] = value.exponent

    def __len__(self) -> int:
        return len(self.mant)

    def copy(self) -> "XArray":
        return XArray(self.mant.copy(), self.exp.copy())

    def scale(self, c: XFloat) -> "XArray":
        if c.is_zero():
            return XArray.zeros(len(self))
        return XArray.normalized(self.mant * c.mantissa, self.exp + c.exponent)


def xa_add(x: XArray, y: XArray) -> XArray:
    e = np.maximum(x.exp, y.exp)
    sx = np.maximum(x.exp - e, _SHIFT_FLOOR)
    sy = np.maximum(y.exp - e, _SHIFT_FLOOR)
    s = np.ldexp(x.mant, sx.astype(np.int32)) + np.ldexp(y.mant, sy.astype(np.int32))
    return XArray.normalized(s, e)


def xa_ratio(x: XArray, y: XArray) -> np.ndarray:
    """Elementwise x / y as plain floats; nan where y == 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        q = x.mant / y.mant
        shift = np.clip(x.exp - y.exp, -1100, 1100).astype(np.int32)
        out = np.ldexp(q, shift)
    out[y.mant == 0.0] = np.nan
    out[(x.mant == 0.0) & (y.mant != 0.0)] = 0.0
    return out
