"""Custom boundaries: diagonal terms, recurrence search and F_n - (n + shift).

The classical unit weights are used throughout; the interesting question is
how the ratio of consecutive diagonal terms tracks a linear function of n.
"""

import argparse

from delannoy.asymptotics import conjecture_report
from delannoy.grid import BOUNDARIES, compute_diagonal_custom
from delannoy.params import Params, format_rational
from delannoy.recurrence import NoRecurrence, search_recurrence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--shift", type=float, default=1.0)
    args = ap.parse_args()
    unit = Params.classic()

    for name, make in BOUNDARIES.items():
        vals = compute_diagonal_custom(unit, make(), args.n).values
        print(f"# {name}: " + ", ".join(format_rational(v) for v in vals[:10]) + ", ...")
        try:
            rec = search_recurrence(vals, max_order=4, max_degree=3)
            print(f"#   recurrence: order {rec.order}, degree {rec.degree}")
        except (NoRecurrence, ValueError) as exc:
            print(f"#   no recurrence: {exc}")
        rows = conjecture_report(name, vals, args.shift)
        for n, F, gap in rows[:: max(1, len(rows) // 8)]:
            print(f"{name},{n},{F:.8g},{gap:.6g}")


if __name__ == "__main__":
    main()
