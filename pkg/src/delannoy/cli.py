"""Command line front end: ``delannoy <command> [flags]``.

Exit status: 0 on success, 1 for usage or precondition errors, 2 when a
verification (``verify``, ``suite``) fails.  Results go to stdout,
diagnostics to stderr.  Output depends only on the flags.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import acceptance
from . import asymptotics as asy
from . import genfun, grid, recurrence
from .params import (
    ParameterError,
    Params,
    format_rational,
    growth_threshold,
    is_geometric,
    normalize,
    parse_rational,
)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    params: Params
    m: int | None = None
    n: int | None = None
    fmt: str = "csv"
    boundary: grid.Boundary | None = None
    extra: dict = field(default_factory=dict)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def load_boundary(spec: str | None) -> grid.Boundary | None:
    if spec is None:
        return None
    if spec in grid.BOUNDARIES:
        return grid.BOUNDARIES[spec]()
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
        except OSError as exc:
            raise UsageError(f"cannot read boundary file: {exc}")
        return grid.sequence_boundary([parse_rational(ln) for ln in lines], path.name)
    raise UsageError(f"unknown boundary {spec!r}; use fib, factorial, powpow or file:PATH")


def _lit(x) -> str:
    return format_rational(x) if isinstance(x, (Fraction, int)) else repr(float(x))


def _float(x: float) -> str:
    return "nan" if math.isnan(x) else repr(float(x))


def _emit_json(obj, compact: bool = False) -> None:
    if compact:
        print(json.dumps(obj, separators=(",", ":")))
    else:
        print(json.dumps(obj, indent=2))


def _require(cfg: RunConfig, name: str) -> int:
    v = getattr(cfg, name)
    if v is None:
        raise UsageError(f"--{name} is required for '{cfg.command}'")
    return v


# ------------------------------------------------------------------ commands


def cmd_table(cfg: RunConfig) -> int:
    m, n = _require(cfg, "m"), _require(cfg, "n")
    part = cfg.extra.get("part")
    if part:
        if cfg.boundary is not None:
            raise UsageError("--part and --boundary are exclusive")
        norm = normalize(cfg.params)
        if part in ("p", "q", "r"):
            g = dict(zip("pqr", grid.decompose_pqr(cfg.params, m, n)))[part]
        else:
            size = max(m, n)
            g = dict(zip("SGt", grid.decompose_SGt(norm.A_hat, norm.gamma_hat, size)))[part]
    elif cfg.boundary is not None:
        g = grid.compute_grid_custom(cfg.params, cfg.boundary, m, n)
    else:
        g = grid.compute_grid(cfg.params, m, n)
    if cfg.fmt == "json":
        _emit_json({"params": cfg.params.to_dict(), "cells": [[_lit(g[i, j]) for j in range(n + 1)] for i in range(m + 1)]})
    else:
        print("m,n,value")
        for i in range(m + 1):
            for j in range(n + 1):
                print(f"{i},{j},{_lit(g[i, j])}")
    return EXIT_OK


def cmd_diagonal(cfg: RunConfig) -> int:
    n = _require(cfg, "n")
    if cfg.extra.get("xfloat"):
        if cfg.boundary is not None:
            raise UsageError("--xfloat works with geometric boundaries only")
        vals = grid.compute_diagonal_xfloat(cfg.params, n)
        rows = [(k, f"{v.mantissa!r}p{v.exponent}" if not v.is_zero() else "0") for k, v in enumerate(vals)]
    else:
        if cfg.boundary is not None:
            diag = grid.compute_diagonal_custom(cfg.params, cfg.boundary, n)
        else:
            diag = grid.compute_diagonal(cfg.params, n)
        rows = [(k, _lit(v)) for k, v in enumerate(diag.values)]
    if cfg.fmt == "json":
        _emit_json({"params": cfg.params.to_dict(), "values": [v for _, v in rows]})
    elif cfg.fmt == "plot":
        for k, v in rows:
            print(f"{k} {v}")
    else:
        print("n,value")
        for k, v in rows:
            print(f"{k},{v}")
    return EXIT_OK


def cmd_gf(cfg: RunConfig) -> int:
    x, y, z = cfg.extra.get("x"), cfg.extra.get("y"), cfg.extra.get("z")
    integral = cfg.extra.get("integral")
    if integral is not None:
        out = {"n": integral, "central_integral": genfun.central_integral(integral)}
    elif z is not None:
        first, second = genfun.residues_at_small_poles(cfg.params, z) if z >= genfun.SERIES_CUTOFF else (math.nan, math.nan)
        out = {"z": z, "value": genfun.eval_diagonal_gf(cfg.params, z), "first_residue": first, "second_residue": second}
    elif x is not None and y is not None:
        out = {"x": x, "y": y, "value": genfun.eval_bivariate(cfg.params, x, y)}
    else:
        raise UsageError("gf needs --z, or --x and --y, or --integral N")
    if cfg.fmt == "json":
        _emit_json(out)
    else:
        print(",".join(out))
        print(",".join(_float(v) if isinstance(v, float) else str(v) for v in out.values()))
    return EXIT_OK


def cmd_asympt(cfg: RunConfig) -> int:
    form = asy.classify(cfg.params)
    out = {
        "params": cfg.params.to_dict(),
        "regime": form.regime,
        "case": form.case,
        "rho": form.rho,
        "prefactor_exponent": format_rational(form.prefactor_exponent),
        "constant": None if math.isnan(form.constant) else form.constant,
        "witnesses": list(form.exact_witnesses),
        "note": form.note,
        "geometric_array": is_geometric(cfg.params),
    }
    if cfg.params.alpha * cfg.params.beta != 0:
        out["threshold"] = growth_threshold(cfg.params)
    if form.regime == asy.SURD and cfg.params.gamma > 0:
        out["constant"] = asy.constant_K(cfg.params)
    if cfg.n is not None:
        rho_hat, k_hat = asy.empirical_growth(cfg.params, cfg.n)
        out.update({"n": cfg.n, "rho_hat": rho_hat, "constant_hat": k_hat})
    if cfg.fmt == "json":
        _emit_json(out)
    else:
        for k, v in out.items():
            print(f"{k},{v}")
    return EXIT_OK


def cmd_ratio(cfg: RunConfig) -> int:
    n = _require(cfg, "n")
    if cfg.boundary is not None:
        diag = grid.compute_diagonal_custom(cfg.params, cfg.boundary, n).values
        traj = [float(diag[k + 1] / diag[k]) if diag[k] != 0 else math.nan for k in range(n)]
    else:
        traj = asy.ratio_trajectory(cfg.params, n)
    kw = {}
    if cfg.extra.get("tol_rel") is not None:
        kw["rel_tol"] = cfg.extra["tol_rel"]
    if cfg.extra.get("tol_abs") is not None:
        kw["abs_tol"] = cfg.extra["tol_abs"]
    if cfg.fmt == "plot":
        for k, v in enumerate(traj):
            print(f"{k} {_float(v)}")
        return EXIT_OK
    try:
        d = asy.diagnose_ratio(traj, **kw)
        diag_out = {"kind": d.kind, "k": d.k, "witnesses": d.witnesses, "n_used": d.n_used, "undefined_indices": d.undefined_indices}
    except ValueError as exc:
        diag_out = {"kind": "too_short", "error": str(exc)}
    if cfg.fmt == "json":
        _emit_json({"params": cfg.params.to_dict(), "diagnosis": diag_out, "trajectory": [None if math.isnan(v) else v for v in traj]})
    else:
        print("n,F_n")
        for k, v in enumerate(traj):
            print(f"{k},{_float(v)}")
        print(f"diagnosis: {diag_out['kind']} {diag_out.get('witnesses', '')}", file=sys.stderr)
    shift = cfg.extra.get("conjecture_shift")
    if shift is not None and cfg.boundary is not None:
        vals = grid.compute_diagonal_custom(cfg.params, cfg.boundary, n).values
        for k, F, gap in asy.conjecture_report(cfg.boundary.name, vals, shift, cfg.extra.get("conjecture_factor") or 1.0):
            print(f"conjecture {k} {F!r} {gap!r}", file=sys.stderr)
    return EXIT_OK


def cmd_findrec(cfg: RunConfig) -> int:
    method = cfg.extra.get("method") or "discover"
    order, degree = cfg.extra.get("order") or 4, cfg.extra.get("degree") or 2
    p = cfg.params
    seed = None
    if method == "ode":
        norm = normalize(p)
        if norm.kind != "full":
            raise UsageError("--method ode needs alpha*beta != 0")
        if p.alpha == 1 and p.beta == 1:
            rec = recurrence.derive_recurrence_from_ode(recurrence.ode_coefficients(p.A, p.B, p.gamma))
        else:
            rec = recurrence.derived_recurrence(p)
    elif method == "reduced":
        rec = recurrence.reduced_recurrence_cases(p)
    elif method == "a-equals-b":
        if not (p.A == p.B and p.alpha == 1 and p.beta == 1):
            raise UsageError("--method a-equals-b needs A == B and alpha == beta == 1")
        rec, seed = recurrence.recurrence_A_equals_B(p.A, p.gamma)
    else:
        need = recurrence.terms_needed(order, degree) if method == "discover" else 60
        if cfg.boundary is not None:
            diag = grid.compute_diagonal_custom(p, cfg.boundary, need)
        else:
            diag = grid.compute_diagonal(p, need)
        if method == "search":
            rec = recurrence.search_recurrence(diag)
        else:
            try:
                rec = recurrence.discover_recurrence(diag, order, degree)
            except recurrence.AmbiguousRecurrence as exc:
                print(f"ambiguous: {exc}", file=sys.stderr)
                _emit_json({"ambiguous": True, "basis": [r.to_json() for r in exc.basis]}, compact=True)
                return EXIT_USAGE
    out = rec.to_json()
    extend = cfg.extra.get("extend")
    if extend is not None:
        if seed is None:
            k = max([rec.valid_from - 1, *rec.blocked_roots]) + 1
            seed = grid.compute_diagonal(p, k - 1).values if cfg.boundary is None else grid.compute_diagonal_custom(p, cfg.boundary, k - 1).values
        out["extension"] = [_lit(v) for v in recurrence.apply_recurrence(rec, seed, extend)]
    _emit_json(out, compact=True)
    return EXIT_OK


def cmd_ode(cfg: RunConfig) -> int:
    norm = normalize(cfg.params)
    if norm.kind != "full":
        raise UsageError("the ODE needs alpha*beta != 0")
    ode = recurrence.ode_coefficients(norm.A_hat, norm.B_hat, norm.gamma_hat)
    out = {
        "normalized": {"A": _lit(norm.A_hat), "B": _lit(norm.B_hat), "gamma": _lit(norm.gamma_hat)},
        **{name: [_lit(c) for c in getattr(ode, name).coefficients] for name in ("q0", "q1", "q2", "c")},
    }
    if cfg.n is not None:
        check = recurrence.verify_ode(ode, grid.compute_diagonal(cfg.params, cfg.n), cfg.n)
        out["verified_to"] = cfg.n
        out["ok"] = check.ok
        out["first_failure"] = check.first_failure
    _emit_json(out)
    return EXIT_OK if out.get("ok", True) else EXIT_VERIFY


def cmd_verify(cfg: RunConfig) -> int:
    """Exact identity checks for one parameter set; exit 2 on any failure."""
    p = cfg.params
    n = cfg.n if cfg.n is not None else 60
    diag = grid.compute_diagonal(p, n)
    results = {}
    rec_file = cfg.extra.get("rec")
    if rec_file:
        rec = recurrence.PolyRecurrence.from_json(json.loads(Path(rec_file).read_text()))
        c = recurrence.verify_recurrence(rec, diag)
        results["recurrence_file"] = {"ok": c.ok, "first_failure": c.first_failure}
    norm = normalize(p)
    if norm.kind == "full":
        ode = recurrence.ode_coefficients(norm.A_hat, norm.B_hat, norm.gamma_hat)
        c = recurrence.verify_ode(ode, diag, min(n, 50))
        results["ode"] = {"ok": c.ok, "first_failure": c.first_failure}
        c = recurrence.verify_recurrence(recurrence.derived_recurrence(p), diag)
        results["derived_recurrence"] = {"ok": c.ok, "first_failure": c.first_failure}
        size = min(n, 20)
        whole = grid.compute_grid(norm.unit_params(), size, size)
        P, Q, R = grid.decompose_pqr(p, size, size)
        results["pqr"] = {"ok": all(whole[i, j] == P[i, j] + Q[i, j] + R[i, j] for i in range(size + 1) for j in range(size + 1))}
        if norm.A_hat != 1:
            S, G, T = grid.decompose_SGt(norm.A_hat, norm.gamma_hat, size)
            results["SGt"] = {"ok": all(P[i, j] == S[i, j] + G[i, j] - T[i, j] for i in range(size + 1) for j in range(size + 1))}
    if p.A == p.alpha and p.B == p.beta:
        g = grid.compute_grid(p, 12, 12)
        results["binomial_closed_form"] = {"ok": all(g[i, j] == grid.closed_form_W(p, i, j) for i in range(13) for j in range(13))}
        c = recurrence.verify_recurrence(recurrence.weighted_central_recurrence(p.alpha, p.beta, p.gamma), diag)
        results["weighted_central_recurrence"] = {"ok": c.ok, "first_failure": c.first_failure}
        if p == Params.classic():
            ok = all(grid.classic_closed_forms(i, j) == (g[i, j], g[i, j]) for i in range(13) for j in range(13))
            ok = ok and all(grid.central_double_factorial(k) == diag[k] for k in range(min(n, 30) + 1))
            results["classic_closed_forms"] = {"ok": ok}
    if p.alpha == 0 and p.beta == 0:
        g = grid.compute_grid(p, 12, 12)
        results["both_zero_closed_form"] = {"ok": all(g[i, j] == grid.both_zero_closed_form(p, i, j) for i in range(13) for j in range(13))}
    all_ok = all(v["ok"] for v in results.values())
    _emit_json({"params": p.to_dict(), "checks": results, "ok": all_ok})
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_paths(cfg: RunConfig) -> int:
    m, n = _require(cfg, "m"), _require(cfg, "n")
    if cfg.boundary is not None:
        oracle = grid.boundary_sum_oracle(cfg.params, cfg.boundary, m, n)
        value = grid.compute_grid_custom(cfg.params, cfg.boundary, m, n)[m, n]
        method = "boundary path sum"
    else:
        oracle = grid.enumerate_paths_oracle(cfg.params, m, n)
        value = grid.compute_grid(cfg.params, m, n)[m, n]
        method = "path enumeration"
    out = {"m": m, "n": n, "oracle": _lit(oracle), "grid": _lit(value), "method": method, "agree": oracle == value}
    if cfg.fmt == "json":
        _emit_json(out)
    else:
        print(",".join(out))
        print(",".join(str(v) for v in out.values()))
    return EXIT_OK if out["agree"] else EXIT_VERIFY


def cmd_suite(cfg: RunConfig) -> int:
    try:
        ids = acceptance.select(cfg.extra.get("only"))
    except ValueError as exc:
        raise UsageError(str(exc))
    faults = set(cfg.extra.get("inject_fault") or ())
    results = acceptance.run_suite(ids, cfg.extra.get("seed") or acceptance.DEFAULT_SEED, faults)
    if cfg.fmt == "json":
        _emit_json([r.report() for r in results])
    else:
        for r in results:
            print(r.line())
    failed = [r.criterion for r in results if not r.passed]
    if failed:
        print(f"failing criteria: {failed}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


# every library operation and the single command that exposes it;
# parse_rational is the flag grammar shared by all of them
COMMANDS = {
    "table": (cmd_table, ["compute_grid", "compute_grid_custom", "decompose_pqr", "decompose_SGt"]),
    "diagonal": (cmd_diagonal, ["compute_diagonal", "compute_diagonal_custom", "compute_diagonal_xfloat"]),
    "gf": (cmd_gf, ["eval_bivariate", "eval_diagonal_gf", "residues_at_small_poles", "central_integral"]),
    "asympt": (cmd_asympt, ["classify", "constant_K", "empirical_growth", "is_geometric", "growth_threshold"]),
    "ratio": (cmd_ratio, ["ratio_trajectory", "diagnose_ratio", "conjecture_report"]),
    "findrec": (cmd_findrec, [
        "discover_recurrence", "search_recurrence", "derive_recurrence_from_ode", "derived_recurrence",
        "reduced_recurrence_cases", "recurrence_A_equals_B", "apply_recurrence",
    ]),
    "ode": (cmd_ode, ["normalize", "ode_coefficients", "verify_ode"]),
    "verify": (cmd_verify, [
        "verify_recurrence", "closed_form_W", "classic_closed_forms", "central_double_factorial",
        "both_zero_closed_form", "weighted_central_recurrence",
    ]),
    "paths": (cmd_paths, ["enumerate_paths_oracle", "boundary_sum_oracle"]),
    "suite": (cmd_suite, ["run_suite"]),
}


HELP = {
    "table": "grid f[m][n] for 0 <= m <= M, 0 <= n <= N (or one decomposition part)",
    "diagonal": "diagonal f[k][k] for k <= N",
    "gf": "evaluate the bivariate or diagonal generating function",
    "asympt": "asymptotic regime, growth rate and constant",
    "ratio": "trajectory of f[k+1][k+1]/f[k][k] and its diagnosis",
    "findrec": "P-recursive recurrence for the diagonal",
    "ode": "coefficients of the ODE for the diagonal series",
    "verify": "exact identity checks for one parameter set",
    "paths": "independent path-sum oracle against the grid",
    "suite": "run the acceptance battery",
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="delannoy", description="Weighted Delannoy numbers with generalized boundaries.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (fn, _) in COMMANDS.items():
        sp = sub.add_parser(name, help=HELP[name])
        for flag, default in (("A", "1"), ("B", "1"), ("alpha", "1"), ("beta", "1"), ("gamma", "1")):
            sp.add_argument(f"--{flag}", type=_rational, default=_rational(default))
        sp.add_argument("--m", type=_nonneg_int)
        sp.add_argument("--n", type=_nonneg_int)
        sp.add_argument("--format", choices=["csv", "json", "plot"], default="csv", dest="fmt")
        sp.add_argument("--boundary", help="fib | factorial | powpow | file:PATH")
        if name == "table":
            sp.add_argument("--part", choices=["p", "q", "r", "S", "G", "t"])
        if name == "diagonal":
            sp.add_argument("--xfloat", action="store_true", help="extended-exponent float sweep")
        if name == "gf":
            sp.add_argument("--z", type=float)
            sp.add_argument("--x", type=float)
            sp.add_argument("--y", type=float)
            sp.add_argument("--integral", type=_nonneg_int, help="central number from its integral")
        if name == "ratio":
            sp.add_argument("--tol-rel", type=float, dest="tol_rel")
            sp.add_argument("--tol-abs", type=float, dest="tol_abs")
            sp.add_argument("--conjecture-shift", type=float, dest="conjecture_shift")
            sp.add_argument("--conjecture-factor", type=float, dest="conjecture_factor")
        if name == "findrec":
            sp.add_argument("--method", choices=["discover", "search", "ode", "reduced", "a-equals-b"], default="discover")
            sp.add_argument("--order", type=_nonneg_int)
            sp.add_argument("--degree", type=_nonneg_int)
            sp.add_argument("--extend", type=_nonneg_int, help="apply the recurrence up to this index")
        if name == "verify":
            sp.add_argument("--rec", help="JSON recurrence file to check against the diagonal")
        if name == "suite":
            sp.add_argument("--only", help="comma list of criterion ids or groups")
            sp.add_argument("--seed", type=_nonneg_int)
            sp.add_argument("--inject-fault", type=int, action="append", dest="inject_fault", help=argparse.SUPPRESS)
    return ap


_BASE = {"command", "A", "B", "alpha", "beta", "gamma", "m", "n", "fmt", "boundary"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = Params(ns.A, ns.B, ns.alpha, ns.beta, ns.gamma)
    extra = {k: v for k, v in vars(ns).items() if k not in _BASE}
    return RunConfig(ns.command, params, ns.m, ns.n, ns.fmt, load_boundary(ns.boundary), extra)


_NEG_FRACTION = re.compile(r"^-\d+/\d+$")


def _glue_negative_fractions(argv: list[str]) -> list[str]:
    # argparse only recognizes -3 and -0.5 as values, not -27/20
    out: list[str] = []
    for tok in argv:
        if out and _NEG_FRACTION.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = build_parser().parse_args(_glue_negative_fractions(argv))
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command][0](cfg)
    except (UsageError, ParameterError, genfun.DomainError, recurrence.NoRecurrence, grid.GridSizeError) as exc:
        print(f"delannoy {ns.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
