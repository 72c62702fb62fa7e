"""Derive, rediscover and cross-check diagonal recurrences on random parameter sets.

Reports, per set, whether the derived order-4 recurrence matches the fitted
one, and the shape search_recurrence settles on when the fit is ambiguous.
"""

import argparse
import random
from fractions import Fraction

from delannoy.grid import compute_diagonal
from delannoy.params import Params
from delannoy.recurrence import (
    AmbiguousRecurrence,
    NoRecurrence,
    derived_recurrence,
    discover_recurrence,
    search_recurrence,
    verify_recurrence,
)


def rand_rational(rng, lo, hi, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--check-to", type=int, default=150)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print("params,derived_ok,fit,order,degree,blocked_roots")
    for _ in range(args.count):
        A, B, g = (rand_rational(rng, -9, 9) for _ in range(3))
        a, b = rand_rational(rng, 1, 5), rand_rational(rng, 1, 5)
        p = Params(A, B, a, b, g)
        diag = compute_diagonal(p, 60)
        try:
            rec = derived_recurrence(p)
        except NoRecurrence:
            fit = search_recurrence(diag)
            print(f"\"{p}\",trivial_ode,searched,{fit.order},{fit.degree},[]")
            continue
        ok = bool(verify_recurrence(rec, compute_diagonal(p, args.check_to)))
        try:
            fit = discover_recurrence(diag)
            verdict = "same" if fit.coeffs == rec.coeffs else "different"
        except AmbiguousRecurrence:
            fit = search_recurrence(diag)
            verdict = "ambiguous"
        print(f"\"{p}\",{ok},{verdict},{fit.order},{fit.degree},{list(rec.blocked_roots)}")


if __name__ == "__main__":
    main()
