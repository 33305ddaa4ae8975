"""Seeded mutation search for a wiring-valid three-class network that the
slopes (-3, -1, 1) cannot realize.

Starting from random three-slope networks, swap adjacent events on disjoint
pairs (this keeps a valid wiring diagram) until the order system for the
fixed slopes becomes infeasible.  The hit is confirmed by Fourier--Motzkin.
"""

from __future__ import annotations

import argparse
import json

from fractions import Fraction

from msncap.core import Cmsn
from msncap.geometry import draw_rgmsn, stream
from msncap.oracle import fm_feasibility
from msncap.realize import order_system, parallel_classes, realize_rgmsn, realize_with_slopes
from msncap.wiring import is_pseudo_realizable, wiring_from_rcmsn

SLOPES = [Fraction(-3), Fraction(-1), Fraction(1)]


def assignment_of(cmsn):
    pc = parallel_classes(cmsn)
    order = []
    for x in wiring_from_rcmsn(cmsn).sigma:
        c = pc.of_sensor[x - 1]
        if not order or order[-1] != c:
            order.append(c)
    rank = {c: r for r, c in enumerate(order)}
    return [rank[c] for c in pc.of_sensor]


def search(seed: int, n: int, rounds: int):
    for trial in range(rounds):
        _, cmsn, classes = draw_rgmsn(n, 3, seed, trial)
        if len(set(classes)) != 3:
            continue
        rng = stream(seed, "mutation", trial)
        events = list(cmsn.events)
        for _ in range(4 * len(events)):
            k = int(rng.integers(0, len(events) - 1))
            if set(events[k]) & set(events[k + 1]):
                continue
            events[k], events[k + 1] = events[k + 1], events[k]
            cand = Cmsn(n, tuple(events), cmsn.kind)
            if not is_pseudo_realizable(cand):
                continue
            a = assignment_of(cand)
            # the wiring order is known up to reflection, so try both class orders
            both = (a, [2 - c for c in a])
            if any(realize_with_slopes(cand, SLOPES, b) for b in both):
                continue
            if not any(fm_feasibility(order_system(cand, [SLOPES[c] for c in b])) for b in both):
                return cand, a, bool(realize_rgmsn(cand, 3))
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--rounds", type=int, default=200)
    args = ap.parse_args()
    hit = search(args.seed, args.n, args.rounds)
    if hit is None:
        print("no fixture found")
        return
    cmsn, a, other = hit
    print(json.dumps({"n": cmsn.n, "kind": cmsn.kind, "events": [list(e) for e in cmsn.events],
                      "classes": a, "realizable_with_other_slopes": other}))


if __name__ == "__main__":
    main()
