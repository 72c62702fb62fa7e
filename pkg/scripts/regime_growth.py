"""Empirical growth against the predicted law for the six regime cases.

For each representative prints rho, rho_hat at several n and the
normalized value f[n][n] / (rho**n n**e) which should settle on the constant.
"""

import argparse

from delannoy import asymptotics as asy
from delannoy.acceptance import REGIME_REPRESENTATIVES
from delannoy.params import Params


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[100, 250, 500, 1000])
    args = ap.parse_args()

    sets = dict(REGIME_REPRESENTATIVES)
    sets["geometric"] = Params(3, 2, 1, 1, 1)
    print("case,params,regime,rho,constant,n,rho_hat,normalized")
    for case, p in sets.items():
        form = asy.classify(p)
        for n in args.n:
            rho_hat, _ = asy.empirical_growth(p, n)
            print(f"{case},\"{p}\",{form.regime},{form.rho:.10g},{form.constant:.10g},{n},{rho_hat:.10g},{asy.normalized_to_law(p, n):.10g}")


if __name__ == "__main__":
    main()
