"""One-off pilot for the Monte Carlo acceptance checks.

Runs every limit check at ten times the acceptance trial count and records
mean, standard error and the gap to the limit in tests/fixtures/pilot.json.
The acceptance tolerances themselves are fixed in the test suite; the pilot
documents how far the n=200 estimates sit from their limits.
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

from msncap.formulas import exp_limit
from msncap.montecarlo import estimate_gmsn_capacity, estimate_reach_table, estimate_rgmsn_capacity

PILOT_SEED = 20240601


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--seed", type=int, default=PILOT_SEED)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "pilot.json"))
    args = ap.parse_args()
    out = {"seed": args.seed, "n": args.n, "trials": args.trials, "checks": {}}
    runs = {
        "gmsn": (estimate_gmsn_capacity(args.n, args.trials, args.seed, args.workers), exp_limit(None)),
        "rgmsn_s3": (estimate_rgmsn_capacity(args.n, 3, args.trials, args.seed, args.workers), exp_limit(3)),
        "rgmsn_s4": (estimate_rgmsn_capacity(args.n, 4, args.trials, args.seed, args.workers), exp_limit(4)),
    }
    for name, (rep, limit) in runs.items():
        out["checks"][name] = {
            "mean": rep.mean,
            "stderr": rep.stderr,
            "limit": f"{limit.numerator}/{limit.denominator}",
            "gap": rep.mean - float(limit),
        }
        print(f"{name}: mean {rep.mean:.5f} stderr {rep.stderr:.5f} gap {rep.mean - float(limit):+.5f}")
    for s in (3, 4):
        rep = estimate_reach_table(s, args.n, args.trials // 4, args.seed, args.workers)
        out["checks"][f"reach_s{s}"] = {"mean": rep.mean, "stderr": rep.stderr, "table": rep.extra["table"]}
        print(f"reach s={s}: average {rep.mean:.5f}")
    Path(args.out).write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
