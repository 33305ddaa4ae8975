"""Exploratory data for the partition conjecture and random orderings.

For each n, the share of groups of ceil(n ln n) shuffled pairs that cover
every sensor is compared with 1 - ln(n)/n, alongside the mean capacity of a
uniformly random ordering of all pairs.  There is no target value.
"""

from __future__ import annotations

import argparse

from msncap.montecarlo import partition_conjecture_experiment, random_rcmsn_capacity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10,20,40,80")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print("n,group_size,covering_share,reference,random_rcmsn_capacity")
    for n in map(int, args.sizes.split(",")):
        part = partition_conjecture_experiment(n, args.trials, args.seed, args.workers)
        rand = random_rcmsn_capacity(n, args.trials, args.seed, args.workers)
        print(f"{n},{part.extra['group_size']},{part.mean:.4f},{part.extra['reference']:.4f},{rand.mean:.4f}")


if __name__ == "__main__":
    main()
