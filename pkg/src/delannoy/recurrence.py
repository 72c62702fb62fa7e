"""Linear recurrences with polynomial coefficients for the diagonal f[n][n].

A :class:`PolyRecurrence` of order r stands for

    sum_{j=0..r} p_j(m) * f[m-j] == 0      for every m >= valid_from,

with each p_j a :class:`Poly` in m.  Two sources produce them: the
second-order ODE of :mod:`delannoy.ode_table` (exact, alpha = beta = 1 and
then rescaled) and a nullspace search on initial terms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .grid import DiagonalSeq
from .linalg import nullspace
from .ode_table import evaluate_entry
from .params import FULL, ParameterError, Params, as_rational, format_rational, normalize

MAX_ORDER = 6
MAX_DEGREE = 4
# rows beyond the number of unknowns in the discovery system
EXTRA_EQUATIONS = 7


class NoRecurrence(ValueError):
    """No recurrence of the requested shape fits the supplied terms."""


class AmbiguousRecurrence(ValueError):
    """The discovery system left more than one independent solution."""

    def __init__(self, message: str, basis: list["PolyRecurrence"]):
        super().__init__(message)
        self.basis = basis


@dataclass(frozen=True)
class Poly:
    """Polynomial with exact coefficients, ascending degree, no trailing zeros."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def of(cls, *coefficients) -> "Poly":
        return cls(tuple(as_rational(c) for c in coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, m) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * m + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def scale(self, c) -> "Poly":
        return Poly(tuple(x * c for x in self.coefficients))

    def shift(self, s: int) -> "Poly":
        """The polynomial m -> self(m + s)."""
        out = [Fraction(0)] * len(self.coefficients)
        for k, c in enumerate(self.coefficients):
            for i in range(k + 1):
                out[i] += c * math.comb(k, i) * s ** (k - i)
        return Poly(tuple(out))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            mag = format_rational(abs(c))
            body = mono if (mag == "1" and mono) else (f"{mag}{mono}" if mono else mag)
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {body}" if terms else (f"-{body}" if c < 0 else body))
        return " ".join(terms)


def integer_roots(p: Poly, lower: int = 0) -> list[int]:
    """Integer zeros r >= lower of a nonzero polynomial, found exactly."""
    if p.is_zero():
        raise ParameterError("the zero polynomial has every integer as a root")
    cs = p.coefficients
    if p.degree == 0:
        return []
    if p.degree == 1:
        r = -cs[0] / cs[1]
        return [int(r)] if r.denominator == 1 and r >= lower else []
    if p.degree == 2:
        c, b, a = cs
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        num, den = disc.numerator, disc.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return []
        sq = Fraction(rn, rd)
        cands = {(-b + sq) / (2 * a), (-b - sq) / (2 * a)}
        return sorted(int(r) for r in cands if r.denominator == 1 and r >= lower)
    # higher degree: locate real roots numerically, confirm every candidate exactly
    approx = np.roots([float(c) for c in reversed(cs)])
    found = set()
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        base = math.floor(z.real)
        for k in range(base - 1, base + 3):
            if k >= lower and p(k) == 0:
                found.add(k)
    return sorted(found)


@dataclass(frozen=True)
class OdeSpec:
    """q0 G + z q1 G' + z**2 q2 G'' = c for the diagonal series (alpha = beta = 1)."""

    q0: Poly
    q1: Poly
    q2: Poly
    c: Poly
    A: Fraction | None = None
    B: Fraction | None = None
    gamma: Fraction | None = None

    def __post_init__(self):
        for name, cap in (("q0", 4), ("q1", 4), ("q2", 4), ("c", 2)):
            if getattr(self, name).degree > cap:
                raise ParameterError(f"{name} has degree above {cap}")

    def q(self, i: int) -> Poly:
        return (self.q0, self.q1, self.q2)[i]


@dataclass(frozen=True)
class PolyRecurrence:
    order: int
    coeffs: tuple[Poly, ...]
    valid_from: int
    blocked_roots: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ParameterError(f"order {self.order} needs {self.order + 1} coefficient polynomials")

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    def residual(self, values: Sequence[Fraction], m: int) -> Fraction:
        return sum((self.coeffs[j](m) * values[m - j] for j in range(self.order + 1)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "valid_from": self.valid_from,
            "coeffs": [[_json_rational(c) for c in p.coefficients] for p in self.coeffs],
            "blocked_roots": list(self.blocked_roots),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyRecurrence":
        coeffs = tuple(Poly(tuple(as_rational(c) for c in row)) for row in data["coeffs"])
        return cls(
            int(data["order"]), coeffs, int(data["valid_from"]), tuple(data.get("blocked_roots", ()))
        )

    def __str__(self) -> str:
        parts = [f"({p}) f[m-{j}]" if j else f"({p}) f[m]" for j, p in enumerate(self.coeffs)]
        return " + ".join(parts) + f" = 0   (m >= {self.valid_from})"


def _json_rational(c: Fraction):
    return c.numerator if c.denominator == 1 else format_rational(c)


def _with_blocked(coeffs: Sequence[Poly], valid_from: int) -> PolyRecurrence:
    p0 = coeffs[0]
    blocked = () if p0.is_zero() else tuple(integer_roots(p0, valid_from))
    return PolyRecurrence(len(coeffs) - 1, tuple(coeffs), valid_from, blocked)


def canonicalize(rec: PolyRecurrence) -> PolyRecurrence:
    """Integer coefficients with content 1; the top coefficient of the first nonzero p_j is positive."""
    allc = [c for p in rec.coeffs for c in p.coefficients]
    if not allc:
        raise NoRecurrence("all coefficient polynomials vanish")
    den = math.lcm(*(c.denominator for c in allc))
    ints = [int(c * den) for c in allc]
    g = math.gcd(*ints)
    lead = next(p for p in rec.coeffs if not p.is_zero()).coefficients[-1]
    factor = Fraction(den, g) * (1 if lead > 0 else -1)
    return _with_blocked([p.scale(factor) for p in rec.coeffs], rec.valid_from)


def same_up_to_scalar(r1: PolyRecurrence, r2: PolyRecurrence) -> bool:
    c1, c2 = canonicalize(r1), canonicalize(r2)
    return c1.order == c2.order and c1.coeffs == c2.coeffs


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    rem = list(a.coefficients)
    quot = [Fraction(0)] * max(len(rem) - b.degree, 0)
    lead = b.coefficients[-1]
    for k in range(len(rem) - 1 - b.degree, -1, -1):
        c = rem[k + b.degree] / lead
        quot[k] = c
        for i, bc in enumerate(b.coefficients):
            rem[k + i] -= c * bc
    return Poly(tuple(quot)), Poly(tuple(rem))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, _poly_divmod(a, b)[1]
    return a if a.is_zero() else a.scale(1 / a.coefficients[-1])


def remove_common_factor(rec: PolyRecurrence) -> PolyRecurrence:
    """Divide every p_j by their common polynomial gcd.

    Only sound when that gcd has no integer zero >= valid_from, which is
    checked; otherwise the recurrence is returned unchanged.
    """
    g = Poly()
    for p in rec.coeffs:
        g = poly_gcd(g, p)
    if g.degree <= 0 or integer_roots(g, rec.valid_from):
        return canonicalize(rec)
    coeffs = tuple(_poly_divmod(p, g)[0] for p in rec.coeffs)
    return canonicalize(PolyRecurrence(rec.order, coeffs, rec.valid_from))


def same_up_to_common_factor(r1: PolyRecurrence, r2: PolyRecurrence) -> bool:
    c1, c2 = remove_common_factor(r1), remove_common_factor(r2)
    return c1.order == c2.order and c1.coeffs == c2.coeffs


# ---------------------------------------------------------------- ODE route


def ode_coefficients(A, B, gamma) -> OdeSpec:
    """The ODE coefficients at a numeric point (A, B, gamma), alpha = beta = 1."""
    A, B, g = as_rational(A), as_rational(B), as_rational(gamma)

    def row(prefix: str, n: int) -> Poly:
        return Poly(tuple(evaluate_entry(f"{prefix}{j}", A, B, g) for j in range(n)))

    return OdeSpec(row("q0", 5), row("q1", 5), row("q2", 5), row("c", 3), A, B, g)


def _raw_ode_recurrence(ode: OdeSpec) -> list[Poly]:
    coeffs = []
    for j in range(5):
        q0j, q1j, q2j = (ode.q(i).coefficients[j] if j <= ode.q(i).degree else Fraction(0) for i in range(3))
        # q0j + (m-j) q1j + (m-j)(m-j-1) q2j expanded in powers of m
        coeffs.append(Poly((q0j - j * q1j + j * (j + 1) * q2j, q1j - (2 * j + 1) * q2j, q2j)))
    return coeffs


def _mechanical_valid_from(order: int, shift: int, ode: OdeSpec) -> int:
    # the z**M coefficient of the ODE is homogeneous once M > deg c; M = m + shift
    return max(order, ode.c.degree + 1 - shift, 0)


def derive_recurrence_from_ode(ode: OdeSpec) -> PolyRecurrence:
    """Order-4 recurrence read off coefficient-wise from the ODE, canonical form."""
    coeffs = _raw_ode_recurrence(ode)
    return canonicalize(PolyRecurrence(4, tuple(coeffs), _mechanical_valid_from(4, 0, ode)))


def _require_full(p: Params):
    norm = normalize(p)
    if norm.kind != FULL:
        raise ParameterError("the ODE route needs alpha*beta != 0; use discover_recurrence instead")
    return norm


def _denormalize(coeffs: Sequence[Poly], ab: Fraction) -> list[Poly]:
    # f[n][n] = (alpha beta)**n * fhat[n]; multiply the normalized relation by (alpha beta)**m
    return [p.scale(ab**j) for j, p in enumerate(coeffs)]


def derived_recurrence(p: Params) -> PolyRecurrence:
    """The ODE recurrence for arbitrary alpha*beta != 0, in canonical form."""
    norm = _require_full(p)
    ode = ode_coefficients(norm.A_hat, norm.B_hat, norm.gamma_hat)
    coeffs = _denormalize(_raw_ode_recurrence(ode), p.alpha * p.beta)
    if all(c.is_zero() for c in coeffs):
        raise NoRecurrence(
            f"the ODE is trivial for normalized A={norm.A_hat}, B={norm.B_hat}, gamma={norm.gamma_hat}; "
            "use search_recurrence on the diagonal"
        )
    return canonicalize(PolyRecurrence(4, tuple(coeffs), _mechanical_valid_from(4, 0, ode)))


def reduced_recurrence_cases(p: Params) -> PolyRecurrence:
    """Lower-order recurrence when the normalized A or B lies in {0, 1}.

    Identically vanishing p_j at either end are dropped; dropping leading
    ones shifts the index, and valid_from follows from the shift.
    """
    norm = _require_full(p)
    if not ({norm.A_hat, norm.B_hat} & {Fraction(0), Fraction(1)}):
        raise ParameterError(f"normalized A={norm.A_hat}, B={norm.B_hat}: not a reduced-order case")
    ode = ode_coefficients(norm.A_hat, norm.B_hat, norm.gamma_hat)
    coeffs = _raw_ode_recurrence(ode)
    lo = next((j for j, c in enumerate(coeffs) if not c.is_zero()), None)
    if lo is None:
        raise NoRecurrence("every p_j vanishes for these parameters; use search_recurrence on the diagonal")
    hi = max(j for j, c in enumerate(coeffs) if not c.is_zero())
    kept = [c.shift(lo) for c in coeffs[lo:hi + 1]]
    order = hi - lo
    kept = _denormalize(kept, p.alpha * p.beta)
    return canonicalize(PolyRecurrence(order, tuple(kept), _mechanical_valid_from(order, lo, ode)))


def recurrence_A_equals_B(A, gamma) -> tuple[PolyRecurrence, list[Fraction]]:
    """Three-term recurrence for A == B != 1 (alpha = beta = 1) and its first terms."""
    A, g = as_rational(A), as_rational(gamma)
    if A == 1:
        raise ParameterError("A == B == 1 is the classical case; use the order-2 recurrence")
    p0 = Poly((-(A - 1), A - 1))
    r1 = Poly((6 - 6 * A - A**2 + 3 * g - 4 * A * g, -4 + 4 * A + A**2 - 2 * g + 3 * A * g))
    r2 = Poly((
        6 * A**2 + 6 * A * g + 3 * A**2 * g - 2 * g**2 + 5 * A * g**2,
        -4 * A**2 - 4 * A * g - 2 * A**2 * g + g**2 - 3 * A * g**2,
    ))
    r3 = Poly((-2 * A**2 * g**2 - 2 * A * g**3, A**2 * g**2 + A * g**3))
    rec = canonicalize(PolyRecurrence(3, (p0, r1.scale(-1), r2.scale(-1), r3.scale(-1)), 3))
    seed = [Fraction(1), 2 * A + g, 2 * A**2 + 4 * A * (1 + g) + g * (2 + g)]
    return rec, seed


def central_recurrence() -> PolyRecurrence:
    """m D[m] - (6m - 3) D[m-1] + (m - 1) D[m-2] = 0 for the classical central numbers."""
    return canonicalize(PolyRecurrence(2, (Poly.of(0, 1), Poly.of(3, -6), Poly.of(-1, 1)), 2))


def weighted_central_recurrence(alpha, beta, gamma) -> PolyRecurrence:
    """m W[m] = (2m - 1)(gamma + 2 alpha beta) W[m-1] - gamma**2 (m - 1) W[m-2]  (A = alpha, B = beta)."""
    a, b, g = as_rational(alpha), as_rational(beta), as_rational(gamma)
    s = g + 2 * a * b
    return canonicalize(PolyRecurrence(2, (Poly.of(0, 1), Poly((s, -2 * s)), Poly((-g * g, g * g))), 2))


# ------------------------------------------------------------- application


@dataclass(frozen=True)
class Check:
    ok: bool
    first_failure: int | None = None
    checked_up_to: int = -1

    def __bool__(self) -> bool:
        return self.ok


def _values(diag) -> list[Fraction]:
    return list(diag.values) if isinstance(diag, DiagonalSeq) else [Fraction(v) for v in diag]


def apply_recurrence(rec: PolyRecurrence, seed: Sequence[Fraction], n_max: int) -> list[Fraction]:
    """Extend ``seed`` to indices 0..n_max; every m with p0(m) == 0 must be seeded."""
    vals = [as_rational(v) for v in seed]
    if rec.coeffs[0].is_zero():
        raise ParameterError("p0 vanishes identically; reduce the recurrence first")
    for m in range(len(vals), n_max + 1):
        if m < rec.valid_from:
            raise ParameterError(f"seed must cover every index below valid_from={rec.valid_from}")
        lead = rec.coeffs[0](m)
        if lead == 0:
            raise ParameterError(f"p0({m}) == 0: f[{m}] cannot be solved for and must be seeded")
        rest = sum((rec.coeffs[j](m) * vals[m - j] for j in range(1, rec.order + 1)), Fraction(0))
        vals.append(-rest / lead)
    return vals[: n_max + 1]


def verify_recurrence(rec: PolyRecurrence, diag) -> Check:
    vals = _values(diag)
    last = rec.valid_from - 1
    for m in range(rec.valid_from, len(vals)):
        if rec.residual(vals, m) != 0:
            return Check(False, m, m)
        last = m
    return Check(True, None, last)


def _normalized_values(diag) -> list[Fraction]:
    vals = _values(diag)
    p = diag.params if isinstance(diag, DiagonalSeq) else None
    if p is None or (p.alpha == 1 and p.beta == 1):
        return vals
    ab = p.alpha * p.beta
    if ab == 0:
        raise ParameterError("the ODE is stated for alpha*beta != 0")
    return [v / ab**k for k, v in enumerate(vals)]


def verify_ode(ode: OdeSpec, diag, order_checked: int) -> Check:
    """Coefficient of z**m in q0 G + z q1 G' + z**2 q2 G'' - c, for m <= order_checked."""
    vals = _normalized_values(diag)
    if len(vals) <= order_checked:
        raise ParameterError(f"need {order_checked + 1} terms, got {len(vals)}")
    raw = _raw_ode_recurrence(ode)
    for m in range(order_checked + 1):
        lhs = sum((raw[j](m) * vals[m - j] for j in range(min(m, 4) + 1)), Fraction(0))
        rhs = ode.c.coefficients[m] if m <= ode.c.degree else Fraction(0)
        if lhs != rhs:
            return Check(False, m, m)
    return Check(True, None, order_checked)


# --------------------------------------------------------------- discovery


def discovery_size(order: int, degree: int) -> tuple[int, int]:
    """(unknowns, equations) of the over-determined discovery system."""
    unknowns = (order + 1) * (degree + 1)
    return unknowns, unknowns + EXTRA_EQUATIONS


def terms_needed(order: int, degree: int) -> int:
    _, eqs = discovery_size(order, degree)
    return order + eqs


def _recurrence_from_vector(v: Sequence[Fraction], order: int, degree: int) -> PolyRecurrence:
    coeffs = tuple(Poly(tuple(v[j * (degree + 1):(j + 1) * (degree + 1)])) for j in range(order + 1))
    return canonicalize(PolyRecurrence(order, coeffs, order))


def discover_recurrence(diag, order: int = 4, degree: int = 2) -> PolyRecurrence:
    """Exact nullspace fit of sum_j p_j(m) f[m-j] = 0, deg p_j <= degree.

    The system uses m = order .. order + E - 1 with E = unknowns + 7 rows;
    the single solution is then checked against every supplied term.
    """
    if not (1 <= order <= MAX_ORDER and 0 <= degree <= MAX_DEGREE):
        raise ParameterError(f"order must be in 1..{MAX_ORDER} and degree in 0..{MAX_DEGREE}")
    vals = _values(diag)
    unknowns, eqs = discovery_size(order, degree)
    need = order + eqs
    if len(vals) < need:
        raise ParameterError(f"discovery with order={order}, degree={degree} needs {need} terms, got {len(vals)}")
    rows = []
    for m in range(order, order + eqs):
        rows.append([Fraction(m) ** k * vals[m - j] for j in range(order + 1) for k in range(degree + 1)])
    basis = nullspace(rows, unknowns)
    if not basis:
        raise NoRecurrence(f"no recurrence of order {order} and degree {degree}")
    if len(basis) > 1:
        recs = [_recurrence_from_vector(v, order, degree) for v in basis]
        raise AmbiguousRecurrence(
            f"{len(basis)}-dimensional solution space for order {order}, degree {degree}", recs
        )
    rec = _recurrence_from_vector(basis[0], order, degree)
    check = verify_recurrence(rec, vals)
    if not check:
        raise NoRecurrence(f"fitted recurrence fails at m={check.first_failure}")
    return rec


def search_recurrence(diag, max_order: int = MAX_ORDER, max_degree: int = MAX_DEGREE) -> PolyRecurrence:
    """Smallest (order, then degree) shape with a unique fitting recurrence."""
    vals = _values(diag)
    for order, degree in itertools.product(range(1, max_order + 1), range(max_degree + 1)):
        if len(vals) < terms_needed(order, degree):
            continue
        try:
            return discover_recurrence(vals, order, degree)
        except NoRecurrence:
            continue
    raise NoRecurrence(f"nothing up to order {max_order}, degree {max_degree}")
