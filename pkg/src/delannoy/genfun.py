"""Floating-point evaluation of the bivariate and diagonal generating functions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import compute_diagonal
from .params import ParameterError, Params

DENOMINATOR_EPS = 1e-12
SERIES_CUTOFF = 1e-4
SERIES_TERMS = 12


class DomainError(ValueError):
    """Evaluation point outside the region where the closed form is valid."""


@dataclass(frozen=True)
class GfPoint:
    z: float
    value: float
    truncation_order: int | None = None


def eval_bivariate(p: Params, x: float, y: float) -> float:
    """Closed form of sum f[m][n] x**m y**n."""
    A, B, a, b, g = (float(v) for v in p.as_tuple())
    if A != 0 and abs(x) >= 1 / abs(A):
        raise DomainError(f"|x| must be below 1/|A| = {1 / abs(A)}")
    if B != 0 and abs(y) >= 1 / abs(B):
        raise DomainError(f"|y| must be below 1/|B| = {1 / abs(B)}")
    if abs(a * x) + abs(b * y) + abs(g * x * y) >= 1:
        raise DomainError("need |alpha x| + |beta y| + |gamma x y| < 1")
    num = 1 - a * x - b * y + a * B * x * y + b * A * x * y - A * B * x * y
    den = (1 - A * x) * (1 - B * y) * (1 - a * x - b * y - g * x * y)
    if abs(den) < DENOMINATOR_EPS:
        raise DomainError("denominator vanishes at this point")
    return num / den


def _S(p: Params, z: float) -> float:
    a, b, g = float(p.alpha), float(p.beta), float(p.gamma)
    disc = 1 + g * g * z * z - 2 * (2 * a * b + g) * z
    if disc < 0:
        raise DomainError(f"z={z} lies beyond the square-root branch point")
    return math.sqrt(disc)


def _check_diagonal_domain(p: Params, z: float) -> None:
    # imported here: asymptotics depends on grid/params only, never on genfun
    from .asymptotics import classify

    if not p.is_nonnegative():
        raise ParameterError("diagonal generating function needs nonnegative parameters")
    if not (0 <= z):
        raise DomainError("z must be nonnegative")
    rho = classify(p).rho
    if rho > 0 and z * rho >= 1:
        raise DomainError(f"z={z} outside the disc of convergence |z| < {1 / rho}")


def residues_at_small_poles(p: Params, z: float) -> tuple[float, float]:
    """The two residue contributions (pole s = Bz, pole s_-) to the diagonal series.

    The s_- term is rearranged so that every cancelling difference is
    written as a quotient: with w = S + 1 - gamma z and u = -1 + gamma z + S,
    u = -4 alpha beta z / w and S - 1 - gamma z = -4 (alpha beta + gamma) z / (S + 1 + gamma z).
    After dividing out alpha the term reads

        -4 beta z K / (S * D * (2 + A v)),   v = -4 beta z / w,
        D = 2 (B - beta) - 4 B (alpha beta + gamma) z / (S + 1 + gamma z),

    with K = alpha B + beta A - A B + gamma.  This is the same rational
    function of (z, S) and stays accurate as z -> 0 and for alpha = 0.
    """
    _check_diagonal_domain(p, z)
    A, B, a, b, g = (float(v) for v in p.as_tuple())
    S = _S(p, z)
    if S == 0:
        raise DomainError("S(z) vanishes at this point")

    if b == B:
        first = 0.0
        if b == 0:
            # pole s = Bz collapses onto s = 0; only diagonal steps survive
            return 1.0 / (1.0 - g * z), 0.0
    else:
        den1 = b - B + a * B * B * z + g * B * z
        if abs(den1) < DENOMINATOR_EPS:
            raise DomainError("first residue denominator vanishes")
        first = (b - B) / den1

    K = a * B + b * A - A * B + g
    w = S + 1 - g * z
    v = -4 * b * z / w
    D = 2 * (B - b) - 4 * B * (a * b + g) * z / (S + 1 + g * z)
    den2 = S * D * (2 + A * v)
    numer = -4 * b * z * K
    if numer == 0:
        return first, 0.0
    if abs(den2) < DENOMINATOR_EPS * max(1.0, abs(numer)):
        raise DomainError("second residue denominator vanishes")
    return first, numer / den2


def diagonal_series(p: Params, z: float, terms: int = SERIES_TERMS) -> float:
    diag = compute_diagonal(p, terms)
    return math.fsum(float(v) * z**k for k, v in enumerate(diag.values))


def eval_diagonal_gf(p: Params, z: float) -> float:
    """sum f[n][n] z**n; truncated series below ``SERIES_CUTOFF``."""
    _check_diagonal_domain(p, z)
    if z < SERIES_CUTOFF:
        return diagonal_series(p, z)
    first, second = residues_at_small_poles(p, z)
    return first + second


def eval_diagonal_point(p: Params, z: float) -> GfPoint:
    if z < SERIES_CUTOFF:
        return GfPoint(z, diagonal_series(p, z), SERIES_TERMS)
    return GfPoint(z, eval_diagonal_gf(p, z))


def central_integral(n: int, nodes: int = 100_000) -> float:
    """Central Delannoy number from its integral over [3 - 2 sqrt 2, 3 + 2 sqrt 2].

    With t = 3 + 2 sqrt(2) cos(theta) the weight 1/sqrt((t-a)(b-t)) becomes
    d theta, leaving (1/pi) * integral_0^pi t**(-n-1) d theta.  The integrand
    is smooth, even and 2 pi periodic, so the trapezoid rule converges
    spectrally.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if nodes < 16:
        raise ParameterError("need at least 16 nodes")
    theta = np.linspace(0.0, math.pi, nodes + 1)
    t = 3.0 + 2.0 * math.sqrt(2.0) * np.cos(theta)
    vals = t ** (-(n + 1))
    h = math.pi / nodes
    integral = h * (vals.sum() - 0.5 * (vals[0] + vals[-1]))
    return float(integral / math.pi)
