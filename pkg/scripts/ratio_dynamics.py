"""Ratio trajectories F_n = f[n+1][n+1]/f[n][n] for the signed parameter sets.

Writes one CSV per set (n,F_n) into --out and prints the diagnosis.
"""

import argparse
from pathlib import Path

from delannoy import asymptotics as asy
from delannoy.acceptance import FIGURES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=asy.FIGURE_TRAJECTORY_LENGTH)
    ap.add_argument("--out", type=Path, default=Path("out/ratio"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for name, (p, _) in FIGURES.items():
        traj = asy.ratio_trajectory(p, args.n)
        d = asy.diagnose_ratio(traj)
        path = args.out / f"{name}.csv"
        with path.open("w") as fh:
            fh.write("n,F_n\n")
            for k, v in enumerate(traj):
                fh.write(f"{k},{v!r}\n")
        vals = ", ".join(f"{w:.4f}" for w in d.witnesses)
        print(f"{name:10s} {str(p):28s} {d.kind:10s} k={d.k} [{vals}] -> {path}")


if __name__ == "__main__":
    main()
