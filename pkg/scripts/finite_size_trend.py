"""Expected capacity against n for distinct and few slopes.

Prints one row per n with the estimated mean, its standard error and the
gap to the limiting value, to show how the n=200 estimates approach their
limits.
"""

from __future__ import annotations

import argparse

from msncap.formulas import exp_limit
from msncap.montecarlo import estimate_gmsn_capacity, estimate_rgmsn_capacity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print("model,n,mean,stderr,gap")
    for n in map(int, args.sizes.split(",")):
        for s in (None, 3, 4):
            if s is None:
                rep = estimate_gmsn_capacity(n, args.trials, args.seed, args.workers)
            else:
                rep = estimate_rgmsn_capacity(n, s, args.trials, args.seed, args.workers)
            name = "gmsn" if s is None else f"s={s}"
            print(f"{name},{n},{rep.mean:.5f},{rep.stderr:.5f},{rep.mean - float(exp_limit(s)):+.5f}")


if __name__ == "__main__":
    main()
