"""Seeded estimators for expected capacities and reach probabilities.

Trial ``t`` draws from its own stream keyed by ``(seed, purpose, t)``, so a
report depends only on its parameters and seed: running trials in worker
processes changes nothing but the wall-clock time.  Capacities are computed
exactly and converted to float only for averaging.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations

import numpy as np

from msncap.core import Cmsn, capacity, reach_masks
from msncap.errors import BadParams
from msncap.geometry import draw_gmsn, draw_rgmsn, stream

log = logging.getLogger(__name__)

MAX_REDRAWS = 1000


@dataclass(frozen=True)
class EstimateReport:
    mean: float
    stderr: float
    trials: int
    n: int
    seed: int
    extra: dict | None = None
    values: tuple[float, ...] = field(default=(), repr=False)


def _report(values, n, seed, extra=None) -> EstimateReport:
    arr = np.asarray(values, dtype=float)
    stderr = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0
    return EstimateReport(float(arr.mean()), stderr, len(arr), n, seed, extra, tuple(float(v) for v in arr))


def _run(fn, trials, workers):
    """``[fn(t) for t in range(trials)]``, optionally across processes, in trial order."""
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(trials)))
    return [fn(t) for t in range(trials)]


def _check(n, trials, n_min):
    if n < n_min:
        raise BadParams(f"need n >= {n_min}")
    if trials < 1:
        raise BadParams("need trials >= 1")


# ---------------------------------------------------------------------------
# capacities


def _gmsn_trial(n, seed, t):
    return capacity(draw_gmsn(n, seed, t)[1])


def estimate_gmsn_capacity(n: int, trials: int, seed: int, workers: int = 1) -> EstimateReport:
    """Mean capacity of random lines with slopes and intercepts uniform on [0, 1)."""
    _check(n, trials, 3)
    caps = _run(partial(_gmsn_trial, n, seed), trials, workers)
    return _report([float(c) for c in caps], n, seed)


def _draw_nonempty(n, s, seed, t):
    """A draw with at least two classes; single-class draws have no events and are redrawn."""
    for r in range(MAX_REDRAWS):
        arr, cmsn, classes = draw_rgmsn(n, s, seed, t, redraw=r)
        if cmsn.events:
            if r:
                log.info("trial %d: %d single-class draws redrawn", t, r)
            return arr, cmsn, classes
    raise BadParams("could not draw two nonempty classes")


def _rgmsn_trial(n, s, seed, t):
    return capacity(_draw_nonempty(n, s, seed, t)[1])


def estimate_rgmsn_capacity(n: int, s: int, trials: int, seed: int, workers: int = 1) -> EstimateReport:
    """Mean capacity when each line picks one of ``s`` random slopes uniformly."""
    _check(n, trials, 3)
    if s < 2:
        raise BadParams("need s >= 2")
    caps = _run(partial(_rgmsn_trial, n, s, seed), trials, workers)
    return _report([float(c) for c in caps], n, seed, {"s": s})


# ---------------------------------------------------------------------------
# reach table


def _reach_trial(n, s, seed, t):
    """Per-trial hit and total counts, indexed ``[i][j][k]`` with classes ordered by slope."""
    _, cmsn, classes = _draw_nonempty(n, s, seed, t)
    class_mask = [sum(1 << x for x in range(1, n + 1) if classes[x - 1] == k) for k in range(s)]
    sizes = [m.bit_count() for m in class_mask]
    hits = np.zeros((s, s, s), dtype=np.int64)
    total = np.zeros((s, s, s), dtype=np.int64)
    for (u, v), mask in zip(cmsn.events, reach_masks(cmsn)):
        i, j = sorted((classes[u - 1], classes[v - 1]))
        for k in range(s):
            total[i, j, k] += sizes[k]
            hits[i, j, k] += (mask & class_mask[k]).bit_count()
    return hits, total


def reach_labels(s: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i, j in combinations(range(1, s + 1), 2) for k in range(1, s + 1)]


def estimate_reach_table(s: int, n: int, trials: int, seed: int, workers: int = 1) -> EstimateReport:
    """Probability that the crossing of a class-``i`` and a class-``j`` line reaches a class-``k`` line.

    Classes are numbered ``1..s`` by increasing slope.  Counts are pooled
    over trials for the table; ``mean`` is the average of its entries and
    the per-trial values are the per-trial averages.
    """
    if s not in (3, 4):
        raise BadParams("reach tables are defined for s in {3, 4}")
    _check(n, trials, 3)
    parts = _run(partial(_reach_trial, n, s, seed), trials, workers)
    hits = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    labels = reach_labels(s)
    table = {}
    for i, j, k in labels:
        tot = total[i - 1, j - 1, k - 1]
        table[f"P({i},{j},{k})"] = float(hits[i - 1, j - 1, k - 1] / tot) if tot else float("nan")
    per_trial = []
    for h, tot in parts:
        vals = [h[i - 1, j - 1, k - 1] / tot[i - 1, j - 1, k - 1] for i, j, k in labels if tot[i - 1, j - 1, k - 1]]
        per_trial.append(float(np.mean(vals)))
    rep = _report(per_trial, n, seed, {"s": s, "table": table})
    finite = [v for v in table.values() if not math.isnan(v)]
    return EstimateReport(float(np.mean(finite)), rep.stderr, rep.trials, n, seed, rep.extra, rep.values)


# ---------------------------------------------------------------------------
# exploratory experiments


def _shuffled_pairs(n, seed, purpose, t):
    pairs = list(combinations(range(1, n + 1), 2))
    order = stream(seed, purpose, n, t).permutation(len(pairs))
    return [pairs[i] for i in order]


def group_size(n: int) -> int:
    return max(1, math.ceil(n * math.log(n)))


def _partition_trial(n, seed, t):
    pairs = _shuffled_pairs(n, seed, "partition", t)
    g = group_size(n)
    groups = [pairs[i : i + g] for i in range(0, len(pairs), g)]
    full = sum(1 for grp in groups if len({x for p in grp for x in p}) == n)
    return full / len(groups)


def partition_conjecture_experiment(n: int, trials: int, seed: int, workers: int = 1) -> EstimateReport:
    """Share of consecutive groups of ``ceil(n ln n)`` shuffled pairs that cover every sensor.

    Exploratory: the report carries the group size and the reference value
    ``1 - ln(n)/n`` of the conjectured ``1 - O(log n / n)`` trend.
    """
    _check(n, trials, 2)
    vals = _run(partial(_partition_trial, n, seed), trials, workers)
    return _report(vals, n, seed, {"group_size": group_size(n), "reference": 1 - math.log(n) / n})


def _rcmsn_trial(n, seed, t):
    return capacity(Cmsn.from_pairs(n, _shuffled_pairs(n, seed, "rcmsn", t), "rcmsn"))


def random_rcmsn_capacity(n: int, trials: int, seed: int, workers: int = 1) -> EstimateReport:
    """Mean capacity of a uniformly random ordering of all pairs."""
    _check(n, trials, 2)
    caps = _run(partial(_rcmsn_trial, n, seed), trials, workers)
    return _report([float(c) for c in caps], n, seed)
