"""Realizability of networks by straight lines with few slopes.

Pipeline for :func:`realize_rgmsn`: wiring check, parallel classes, class
count, class slope order, then a search for slopes and intercepts.  With the
slopes fixed, the crossing abscissa of two lines is linear in the intercepts,
so "the events happen in this order" is a homogeneous system of strict
inequalities decided exactly by :func:`msncap.lp.feasible_strict`.

Every positive answer carries a witness arrangement that is regenerated and
compared with the input before it is returned; a wrong encoding can cost a
false negative, never a false positive.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np
from scipy.optimize import linprog, minimize

from msncap.core import Cmsn, Packet, validate
from msncap.errors import (
    BadParams,
    ConcurrentLines,
    EmptyNetwork,
    NonRealizable,
    NotClassPartition,
    TieRejected,
    UnsupportedSlopeCount,
)
from msncap.geometry import STABLE_IF_DISJOINT, Arrangement, Line, cmsn_from_arrangement
from msncap.lp import GT, LinearSystem, feasible_strict, maximize_linear_fractional
from msncap.wiring import wiring_from_rcmsn

log = logging.getLogger(__name__)

REALIZABLE = "realizable"
NOT_REALIZABLE = "not_realizable"

SEARCH = "search"
CANDIDATES = "candidates"
AUTO = "auto"

SHEAR_HALVINGS = 64
CANDIDATE_LIMIT_N = 9


@dataclass(frozen=True)
class ParallelClasses:
    """Components of the non-crossing graph, each sorted, ordered by least member."""

    classes: tuple[tuple[int, ...], ...]
    of_sensor: tuple[int, ...]  # of_sensor[x - 1] is the class index of sensor x
    non_crossing: frozenset[Packet]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class RealizeResult:
    decision: str
    witness: Arrangement | None = None
    certificate_note: str = ""

    def __bool__(self):
        return self.decision == REALIZABLE


def _no(note: str) -> RealizeResult:
    return RealizeResult(NOT_REALIZABLE, None, note)


def parallel_classes(cmsn: Cmsn) -> ParallelClasses:
    """Partition sensors by the non-crossing relation; each component must be a clique."""
    validate(cmsn)
    n = cmsn.n
    met = set(cmsn.events)
    missing = frozenset(Packet(u, v) for u, v in combinations(range(1, n + 1), 2) if (u, v) not in met)
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in missing:
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        groups.setdefault(find(x), []).append(x)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    of = [0] * n
    for c, members in enumerate(classes):
        for x in members:
            of[x - 1] = c
        for u, v in combinations(members, 2):
            if (u, v) in met:
                raise NotClassPartition(
                    f"sensors {u} and {v} meet although both are parallel to the rest of {set(members)}"
                )
    return ParallelClasses(classes, tuple(of), missing)


# ---------------------------------------------------------------------------
# fixed slopes


def _x_form(K, i, j, n):
    """Abscissa of the crossing of lines ``i`` and ``j`` (0-based) as a form in the intercepts."""
    v = [Fraction(0)] * n
    if K[i] is None:
        v[i] = Fraction(1)
    elif K[j] is None:
        v[j] = Fraction(1)
    else:
        d = K[i] - K[j]
        v[j] += 1 / d
        v[i] -= 1 / d
    return v


def _y_on_vertical(K, vert, other, n):
    """Ordinate where line ``other`` meets the vertical line ``vert``."""
    v = [Fraction(0)] * n
    v[vert] = K[other]
    v[other] = Fraction(1)
    return v


def order_system(cmsn: Cmsn, sensor_slopes: Sequence[Fraction | None], tilt: int = 1) -> LinearSystem:
    """Strict inequalities saying that consecutive events occur left to right.

    Variable ``i`` is the intercept of line ``i + 1`` (its abscissa when
    vertical).  Two consecutive events on the same vertical line share an
    abscissa; they are ordered by height instead, upward for ``tilt=1``,
    which is the order a small shear ``x' = x + eps*y`` with ``eps > 0``
    produces.
    """
    n = cmsn.n
    K = [None if k is None else Fraction(k) for k in sensor_slopes]
    sys = LinearSystem(n)
    prev = None
    for u, v in cmsn.events:
        i, j = u - 1, v - 1
        cur = (i, j)
        if prev is not None:
            shared = {prev[0], prev[1]} & {i, j}
            vert = next((s for s in shared if K[s] is None), None)
            if vert is not None:
                a = sum(prev) - vert
                b = sum(cur) - vert
                ya, yb = _y_on_vertical(K, vert, a, n), _y_on_vertical(K, vert, b, n)
                sys.add([tilt * (q - p) for p, q in zip(ya, yb)], GT)
            else:
                xa, xb = _x_form(K, *prev, n), _x_form(K, i, j, n)
                sys.add([q - p for p, q in zip(xa, xb)], GT)
        prev = cur
    return sys


def _regenerates(arr: Arrangement, cmsn: Cmsn) -> bool:
    try:
        got = cmsn_from_arrangement(arr, STABLE_IF_DISJOINT)
    except (TieRejected, ConcurrentLines):
        return False
    return got.n == cmsn.n and got.events == cmsn.events


def _sheared(K, values, eps):
    """Image of the lines under ``x' = x + eps*y``; verticals become steep lines."""
    out = []
    for k, b in zip(K, values):
        if k is None:
            out.append(Line(1 / eps, -b / eps))
        else:
            out.append(Line(k / (1 + k * eps), b / (1 + k * eps)))
    return out


def _witness(cmsn, K, values, tilt):
    if all(k is not None for k in K):
        arr = Arrangement(Line(k, b) for k, b in zip(K, values))
        return arr if _regenerates(arr, cmsn) else None
    kmax = max((abs(k) for k in K if k is not None), default=Fraction(0))
    eps = Fraction(tilt, 2 * (1 + kmax))
    for _ in range(SHEAR_HALVINGS):
        arr = Arrangement(_sheared(K, values, eps))
        if _regenerates(arr, cmsn):
            return arr
        eps /= 2
    return None


def realize_with_slopes(
    cmsn: Cmsn,
    slopes: Sequence[Fraction | None],
    class_assignment: Sequence[int],
    tilt: int | None = None,
) -> RealizeResult:
    """Decide whether lines with the given class slopes can produce ``cmsn``.

    ``slopes[c]`` is the slope of class ``c`` (None for vertical) and
    ``class_assignment[x - 1]`` the class of sensor ``x``.  Both shear
    directions are tried for a vertical class unless ``tilt`` is given.
    """
    validate(cmsn)
    n = cmsn.n
    if len(class_assignment) != n:
        raise BadParams(f"class_assignment needs {n} entries")
    slopes = [None if k is None else Fraction(k) for k in slopes]
    if len(set(slopes)) != len(slopes):
        raise BadParams("class slopes must be pairwise distinct")
    if any(not 0 <= c < len(slopes) for c in class_assignment):
        raise BadParams("class index out of range")
    want = {Packet(u, v) for u, v in combinations(range(1, n + 1), 2) if class_assignment[u - 1] != class_assignment[v - 1]}
    if set(cmsn.events) != want:
        return _no("class assignment: events are not exactly the crossings of distinct classes")
    K = [slopes[c] for c in class_assignment]
    has_vertical = any(k is None for k in K)
    tilts = [tilt] if tilt is not None else ([1, -1] if has_vertical else [1])
    for t in tilts:
        w = feasible_strict(order_system(cmsn, K, t))
        if not w:
            continue
        arr = _witness(cmsn, K, w.values, t)
        if arr is not None:
            return RealizeResult(REALIZABLE, arr, "order system feasible; witness regenerates the input")
        log.warning("order system feasible but the witness failed regeneration")
        return _no("witness failed regeneration (reported, not patched)")
    return _no("order system infeasible for the given slopes")


# ---------------------------------------------------------------------------
# slope search


def _gaps_to_slopes(gaps):
    out = [Fraction(0)]
    for g in gaps:
        out.append(out[-1] + g)
    return out


class _Violation:
    """Float surrogate: least total shortfall of ``D b >= 1`` over the intercepts.

    Zero exactly when the order system is feasible for these slopes (the
    system is homogeneous, so any strict solution scales to unit gaps).
    Unlike a bounded margin it keeps a slope towards feasibility.
    """

    BOUND = 1e6

    def __init__(self, cmsn, assignment):
        self.n = cmsn.n
        self.assignment = list(assignment)
        self.events = [(u - 1, v - 1) for u, v in cmsn.events]

    def __call__(self, slopes):
        n = self.n
        K = np.array([slopes[c] for c in self.assignment], dtype=float)
        rows = []
        prev = None
        for i, j in self.events:
            form = np.zeros(n)
            d = K[i] - K[j]
            form[j] += 1 / d
            form[i] -= 1 / d
            if prev is not None:
                rows.append(form - prev)
            prev = form
        D = np.array(rows)
        m = len(rows)
        # minimize sum(s) subject to D b + s >= 1, s >= 0
        res = linprog(
            np.r_[np.zeros(n), np.ones(m)],
            A_ub=np.hstack([-D, -np.eye(m)]),
            b_ub=-np.ones(m),
            bounds=[(-self.BOUND, self.BOUND)] * n + [(0, None)] * m,
            method="highs",
        )
        if res.status != 0:
            return math.inf
        return float(res.fun)


def _rational(z):
    return Fraction(math.exp(z)).limit_denominator(10**6)


def _certify(cmsn, assignment, slopes):
    res = realize_with_slopes(cmsn, slopes, assignment)
    return res if res else None


def _search(cmsn, assignment, c, grid_points=25, span=6.0):
    """Grid over log slope gaps, refined by Nelder--Mead; zero-shortfall points are certified exactly."""
    shortfall = _Violation(cmsn, assignment)
    free = c - 2
    zs = np.linspace(-span, span, grid_points)

    def value(z):
        return shortfall([0.0, 1.0] + list(1.0 + np.cumsum(np.exp(z))))

    tried = set()

    def attempt(z):
        key = tuple(round(float(t), 9) for t in z)
        if key in tried:
            return None
        tried.add(key)
        gaps = [Fraction(1)] + [_rational(t) for t in z]
        return _certify(cmsn, assignment, _gaps_to_slopes(gaps))

    scored = []
    # centre outwards so typical instances stop early
    order = sorted(product(zs, repeat=free), key=lambda z: sum(t * t for t in z))
    for z in order:
        v = value(z)
        scored.append((v, z))
        if v < 1e-9:
            res = attempt(z)
            if res:
                return res
    scored.sort(key=lambda p: p[0])
    for _, z0 in scored[:3]:
        opt = minimize(value, np.array(z0, dtype=float), method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-12, "maxiter": 400 * free})
        if opt.fun < 1e-9:
            res = attempt(opt.x)
            if res:
                return res
    return None


# ---------------------------------------------------------------------------
# candidate slopes by linear-fractional programming


def _restricted(cmsn, assignment, upto):
    keep = [x for x in range(1, cmsn.n + 1) if assignment[x - 1] < upto]
    relabel = {x: i for i, x in enumerate(keep, 1)}
    events = [(relabel[u], relabel[v]) for u, v in cmsn.events if u in relabel and v in relabel]
    return Cmsn.from_pairs(len(keep), events, "cmsn"), [assignment[x - 1] for x in keep]


def candidate_slopes(cmsn, assignment, fixed):
    """Candidate slopes for the class ranked ``len(fixed)``, steeper than every fixed class.

    For each ordered pair of crossings ``P`` before ``Q`` of the
    sub-arrangement formed by the fixed classes, the slope of segment ``PQ``
    is a linear-fractional function of the intercepts; its supremum and
    infimum over the closure of the feasible intercepts are breakpoints.
    Together with the steepest fixed slope they split the admissible range
    into intervals, and one value ``k0 + delta`` is tried just right of each
    breakpoint ``k0``: ``delta`` is below half the square of the smallest
    nonzero breakpoint magnitude and below half the gap to the next
    breakpoint.  One slope steeper than every breakpoint is appended.

    The set is a heuristic: segment slopes over free intercepts are often
    unbounded, and then the admissible window for the new slope has no
    finite breakpoint.  Every returned witness is still verified exactly.
    """
    sub, sub_assign = _restricted(cmsn, assignment, len(fixed))
    K = [fixed[c] for c in sub_assign]
    n = sub.n
    sys = order_system(sub, K)
    points = []
    for u, v in sub.events:
        x = _x_form(K, u - 1, v - 1, n)
        y = [K[u - 1] * a for a in x]
        y[u - 1] += 1
        points.append((x, y))
    top = max(fixed)
    found = {top}
    for (xp, yp), (xq, yq) in combinations(points, 2):
        num = [b - a for a, b in zip(yp, yq)]
        den = [b - a for a, b in zip(xp, xq)]
        for sign in (1, -1):
            res = maximize_linear_fractional(([sign * a for a in num], den), sys)
            if res.status == "optimal" and sign * res.value > top:
                found.add(sign * res.value)
    bases = sorted(found)
    nonzero = [abs(k) for k in bases if k]
    delta = min(nonzero) ** 2 / 4 if nonzero else Fraction(1, 4)
    out = []
    for k0, k1 in zip(bases, bases[1:] + [None]):
        step = delta if k1 is None else min(delta, (k1 - k0) / 2)
        out.append(k0 + step)
    out.append(bases[-1] + 1)
    return out


def _by_candidates(cmsn, assignment, c):
    fixed = [Fraction(0), Fraction(1)]

    def extend(fixed):
        if len(fixed) == c:
            return _certify(cmsn, assignment, fixed)
        for k in candidate_slopes(cmsn, assignment, fixed):
            nxt = fixed + [k]
            sub, sub_assign = _restricted(cmsn, assignment, len(nxt))
            if len(nxt) < c and not realize_with_slopes(sub, nxt, sub_assign):
                continue
            res = extend(nxt)
            if res:
                return res
        return None

    return extend(fixed)


# ---------------------------------------------------------------------------
# bounded slope count


def class_order(cmsn: Cmsn) -> list[int] | RealizeResult:
    """Rank of each sensor's class by slope, read off the wiring diagram.

    Far to the left lines run top to bottom by increasing slope, so each
    parallel class must be a contiguous block of the initial order.  Returns
    a negative :class:`RealizeResult` naming the stage when a necessary
    condition fails.  The ranks are known only up to reflection.
    """
    validate(cmsn)
    if not cmsn.events:
        raise EmptyNetwork("a network without events has no slope structure")
    try:
        wiring = wiring_from_rcmsn(cmsn)
    except NonRealizable as exc:
        return _no(f"wiring: no pseudoline arrangement (event {exc.index}: {exc})")
    try:
        pc = parallel_classes(cmsn)
    except NotClassPartition as exc:
        return _no(f"parallel classes: {exc}")
    order: list[int] = []
    for x in wiring.sigma:
        cls = pc.of_sensor[x - 1]
        if not order or order[-1] != cls:
            order.append(cls)
    if len(order) != len(pc):
        return _no("class order: a parallel class is split in the wiring diagram")
    rank = {cls: r for r, cls in enumerate(order)}
    return [rank[cls] for cls in pc.of_sensor]


def realize_with_slope_set(cmsn: Cmsn, slopes: Sequence[Fraction | None]) -> RealizeResult:
    """Decide realizability when the set of class slopes is given but not which class gets which.

    Slopes are matched to classes by rank; both reflections of the class
    order are tried, and a vertical slope (None) is tried at either end.
    """
    ranks = class_order(cmsn)
    if isinstance(ranks, RealizeResult):
        return ranks
    c = max(ranks) + 1
    if len(slopes) != c:
        return _no(f"class count: {c} parallel classes for {len(slopes)} slopes")
    finite = sorted(Fraction(k) for k in slopes if k is not None)
    if len(finite) < len(slopes) - 1:
        raise BadParams("at most one vertical slope")
    if len(finite) == len(slopes):
        layouts = [finite]
    else:
        layouts = [finite + [None], [None] + finite]
    for layout in layouts:
        for assign in (ranks, [c - 1 - r for r in ranks]):
            res = realize_with_slopes(cmsn, layout, assign)
            if res:
                return res
    return _no("order system infeasible for every matching of slopes to classes")


def realize_rgmsn(cmsn: Cmsn, s: int, method: str = AUTO) -> RealizeResult:
    """Decide whether lines with at most ``s <= 4`` distinct slopes produce ``cmsn``.

    ``method`` selects the slope finder for three or four classes:
    ``"search"`` (float-guided, exactly certified), ``"candidates"``
    (linear-fractional candidate slopes) or ``"auto"`` (search, then
    candidates for ``n <= 9``).  A negative answer from either finder
    means no certified slope vector was found.
    """
    if int(s) != s or s < 1:
        raise BadParams("s must be a positive integer")
    if s >= 5:
        raise UnsupportedSlopeCount("realizability is implemented for at most four slopes")
    if method not in (AUTO, SEARCH, CANDIDATES):
        raise BadParams(f"unknown method {method!r}")
    assignment = class_order(cmsn)
    if isinstance(assignment, RealizeResult):
        return assignment
    c = max(assignment) + 1
    if c > s:
        return _no(f"class count: {c} parallel classes exceed {s} slopes")
    if c == 2:
        res = realize_with_slopes(cmsn, [Fraction(0), Fraction(1)], assignment)
        return res if res else _no("grid: " + res.certificate_note)
    res = None
    if method in (AUTO, SEARCH):
        res = _search(cmsn, assignment, c)
    if res is None and (method == CANDIDATES or (method == AUTO and cmsn.n <= CANDIDATE_LIMIT_N)):
        res = _by_candidates(cmsn, assignment, c)
    if res is None:
        return _no(f"slopes: no certified slopes for {c} classes")
    return res
