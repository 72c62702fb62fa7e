"""Asymptotic regimes of the diagonal f[n][n] and the dynamics of f[n+1][n+1]/f[n][n].

For nonnegative parameters the regime is decided by comparing the products
A*beta and B*alpha with the threshold alpha*beta + sqrt(alpha*beta*(alpha*beta+gamma)).
Those comparisons are exact (see :func:`delannoy.params.compare_to_threshold`);
floats appear only in the reported growth rate and constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .grid import compute_diagonal, diagonal_xfloat_sweep
from .params import ParameterError, Params, compare_to_threshold

SURD = "surd"
B_DOMINANT = "b_dominant"
A_DOMINANT = "a_dominant"
TIE = "tie"
GEOMETRIC = "geometric"

# exact rational sweep is used for trajectories up to this length
EXACT_TRAJECTORY_LIMIT = 2000


@dataclass(frozen=True)
class AsymptoticForm:
    regime: str
    rho: float
    prefactor_exponent: Fraction
    constant: float
    exact_witnesses: tuple[str, ...] = ()
    case: int | None = None
    note: str = ""


@dataclass(frozen=True)
class RatioDiagnosis:
    kind: str  # converges | k_cycle | unbounded | undefined_ratio | inconclusive
    witnesses: list[float] = field(default_factory=list)
    n_used: int = 0
    k: int | None = None
    undefined_indices: list[int] = field(default_factory=list)


def _surd_rho(p: Params) -> float:
    ab = float(p.alpha * p.beta)
    return (math.sqrt(ab) + math.sqrt(ab + float(p.gamma))) ** 2


def _b_rate(p: Params) -> float:
    return float(p.B * (p.alpha * p.B + p.gamma) / (p.B - p.beta))


def _a_rate(p: Params) -> float:
    return float(p.A * (p.A * p.beta + p.gamma) / (p.A - p.alpha))


def constant_K(p: Params) -> float:
    """Constant of the K * rho**m / sqrt(m) law in the surd regime."""
    if not p.is_nonnegative():
        raise ParameterError("constant_K needs nonnegative parameters")
    if p.gamma <= 0:
        raise ParameterError("constant_K needs gamma > 0")
    if p.alpha * p.beta == 0:
        raise ParameterError("constant_K needs alpha*beta != 0")
    form = classify(p)
    if form.regime != SURD:
        raise ParameterError(f"constant_K only applies in the surd regime, not {form.regime}")
    return _k_formula(p)


def _k_formula(p: Params) -> float:
    A, B, a, b, g = (float(v) for v in p.as_tuple())
    ab = a * b
    r = math.sqrt(g / ab + 1)
    num = g * (A * b + B * a - A * B + g)
    den = 2 * math.sqrt(math.pi) * (g / ab + 1) ** 0.25 * (
        A * B * ab * (r - 1) + ab * g * (r + 1) - (A * b + B * a) * g
    )
    return num / den


def classify(p: Params) -> AsymptoticForm:
    if not p.is_nonnegative():
        raise ParameterError(f"classify needs nonnegative parameters, got {p}")
    A, B, a, b, g = p.as_tuple()

    if a * b == 0:
        # With alpha == 0 the region m >= n never reads the top row and
        # f[m][n] = A**m (beta + gamma/A)**n there, so f[n][n] = (A beta + gamma)**n;
        # symmetrically for beta == 0.
        rate = A * b + B * a + g
        return AsymptoticForm(
            GEOMETRIC, float(rate), Fraction(0), 1.0,
            (f"alpha*beta == 0; f[n][n] == ({rate})**n",), None,
        )

    x, y = A * b, B * a
    sx, sy = compare_to_threshold(p, x), compare_to_threshold(p, y)
    wit = (f"A*beta={x} vs T: {sx:+d}", f"B*alpha={y} vs T: {sy:+d}")
    if A * B == b * A + a * B + g:
        # f[m][n] == A**m B**n exactly; never in the surd case
        case = 2 if sx <= 0 <= sy else 4 if sy <= 0 <= sx else 3 if x < y else 5
        return AsymptoticForm(GEOMETRIC, float(A * B), Fraction(0), 1.0, wit + ("A*B == beta*A + alpha*B + gamma",), case)

    if sx < 0 and sy < 0:
        if g > 0:
            K, note = _k_formula(p), ""
        else:
            K, note = math.nan, "gamma == 0: constant outside the surd-regime theorem"
        return AsymptoticForm(SURD, _surd_rho(p), Fraction(-1, 2), K, wit, 1, note)
    if sx <= 0 <= sy:
        return AsymptoticForm(B_DOMINANT, _b_rate(p), Fraction(0), 1.0, wit, 2)
    if sx >= 0 and x < y:
        return AsymptoticForm(B_DOMINANT, _b_rate(p), Fraction(0), 1.0, wit, 3)
    if sy <= 0 <= sx:
        return AsymptoticForm(A_DOMINANT, _a_rate(p), Fraction(0), 1.0, wit, 4)
    if sy >= 0 and y < x:
        return AsymptoticForm(A_DOMINANT, _a_rate(p), Fraction(0), 1.0, wit, 5)
    # remaining: T < A*beta == B*alpha
    return AsymptoticForm(TIE, _b_rate(p), Fraction(0), 2.0, wit, 6)


def growth_limit(p: Params) -> float:
    return classify(p).rho


def empirical_growth(p: Params, n_max: int) -> tuple[float, float]:
    """(f[n+1][n+1]/f[n][n], f[n][n] * sqrt(n) / rho**n) at n = n_max.

    The second entry is only meaningful in the surd regime; elsewhere it is
    f[n][n] / rho**n, the constant of the pure exponential law.
    """
    if not p.is_nonnegative():
        raise ParameterError("empirical_growth needs nonnegative parameters")
    form = classify(p)
    rho = form.rho
    log2_scale = -math.log2(rho) if rho > 0 else 0.0
    diag = diagonal_xfloat_sweep(p, n_max + 1, log2_scale)
    ratio_scaled = diag[n_max + 1] / diag[n_max]
    rho_hat = float(ratio_scaled) * rho if rho > 0 else float(ratio_scaled)
    k_hat = float(diag[n_max])
    if form.regime == SURD:
        k_hat *= math.sqrt(n_max)
    return rho_hat, k_hat


def normalized_to_law(p: Params, n: int) -> float:
    """f[n][n] divided by the leading term rho**n (times n**prefactor_exponent)."""
    form = classify(p)
    diag = diagonal_xfloat_sweep(p, n, -math.log2(form.rho))
    return float(diag[n]) * n ** (-float(form.prefactor_exponent))


def _exact_ratios(p: Params, n_max: int) -> np.ndarray:
    vals = compute_diagonal(p, n_max).values
    out = np.empty(n_max)
    for k in range(n_max):
        den = vals[k]
        if den == 0:
            out[k] = np.nan
        else:
            q = vals[k + 1] / den
            out[k] = q.numerator / q.denominator
    return out


def ratio_trajectory(p: Params, n_max: int, exact_limit: int = EXACT_TRAJECTORY_LIMIT) -> list[float]:
    """F_k = f[k+1][k+1] / f[k][k] for k < n_max; nan where f[k][k] == 0.

    Exact rational arithmetic up to ``exact_limit`` so that sign changes from
    negative weights are not blurred by rounding; XFloat beyond.
    """
    if n_max <= 0:
        return []
    if n_max <= exact_limit:
        return [float(v) for v in _exact_ratios(p, n_max)]
    diag = diagonal_xfloat_sweep(p, n_max)
    out = []
    for k in range(n_max):
        if diag[k].is_zero():
            out.append(math.nan)
        else:
            out.append(float(diag[k + 1] / diag[k]))
    return out


MIN_TRAJECTORY = 64
MAX_PERIOD = 6
ABS_TOL = 1e-6
REL_TOL = 1e-3
UNBOUNDED_FACTOR = 10.0
FIGURE_TRAJECTORY_LENGTH = 1000


def _quarter_spread(F: np.ndarray, k: int, lo: int, hi: int) -> float:
    """max |F[n+k] - F[n]| for n + k in [lo, hi); inf when undefined entries intrude."""
    d = F[lo:hi] - F[lo - k:hi - k]
    if not np.all(np.isfinite(d)):
        return math.inf
    return float(np.max(np.abs(d)))


def diagnose_ratio(trajectory, rel_tol: float = REL_TOL, abs_tol: float = ABS_TOL) -> RatioDiagnosis:
    """Classify a ratio trajectory as convergent, periodic, unbounded or inconclusive.

    The first half is burn-in.  Period k (1..6, smallest first) is accepted
    when, over the last quarter, max |F[n+k] - F[n]| <= abs_tol + rel_tol * max|F|
    and that spread is no larger than over the quarter before (the orbit is
    still contracting onto the cycle, not wandering).  Unbounded: the last
    quarter peaks more than ten times higher than the quarter before.
    Witnesses are the last k values, rotated to start at the largest.
    """
    F = np.asarray(trajectory, dtype=float)
    if len(F) < MIN_TRAJECTORY:
        raise ValueError(f"trajectory too short: {len(F)} < {MIN_TRAJECTORY}")
    undefined = [int(i) for i in np.flatnonzero(~np.isfinite(F))]
    n = len(F)
    q = n // 4
    last, prev = F[n - q:], F[n - 2 * q:n - q]
    if not np.any(np.isfinite(last)):
        return RatioDiagnosis("undefined_ratio", [], n, None, undefined)

    scale = float(np.nanmax(np.abs(last)))
    tol = abs_tol + rel_tol * scale
    for k in range(1, MAX_PERIOD + 1):
        spread_last = _quarter_spread(F, k, n - q, n)
        spread_prev = _quarter_spread(F, k, n - 2 * q, n - q)
        if spread_last <= tol and spread_last <= spread_prev:
            tail = F[-k:]
            start = int(np.argmax(tail))
            values = [float(v) for v in np.roll(tail, -start)]
            kind = "converges" if k == 1 else "k_cycle"
            return RatioDiagnosis(kind, values, n, k, undefined)

    if np.any(np.isfinite(prev)):
        last_max, prev_max = scale, float(np.nanmax(np.abs(prev)))
        if last_max > UNBOUNDED_FACTOR * prev_max:
            return RatioDiagnosis("unbounded", [last_max], n, None, undefined)
    if undefined and undefined[-1] >= n // 2:
        return RatioDiagnosis("undefined_ratio", [], n, None, undefined)
    return RatioDiagnosis("inconclusive", [], n, None, undefined)


def conjecture_report(boundary_name: str, values, shift: float, factor: float = 1.0) -> list[tuple[int, float, float]]:
    """Rows (n, F_n, F_n - factor*(n + shift)) for a custom-boundary diagonal; F_n is nan where values[n] == 0."""
    rows = []
    for n in range(len(values) - 1):
        if values[n] == 0:
            rows.append((n, math.nan, math.nan))
            continue
        F = values[n + 1] / values[n]
        Ff = F.numerator / F.denominator if isinstance(F, Fraction) else float(F)
        rows.append((n, Ff, Ff - factor * (n + shift)))
    return rows
