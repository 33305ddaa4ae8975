"""Deterministic line arrangements attaining the extremal capacities.

All coordinates are exact rationals and every constructor is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from msncap.core import capacity, deliveries
from msncap.errors import BadParams, ConcurrentLines, ConstructionFailed, TieRejected
from msncap.formulas import max3_sizes, max4
from msncap.geometry import (
    STABLE_IF_DISJOINT,
    Arrangement,
    Line,
    _integer_crossings,
    cmsn_from_arrangement,
)


def min_capacity_gmsn(n: int) -> Arrangement:
    """Lines ``k*x + (n+1-k)*y = k*(n+1-k)`` for ``k = 1..n``."""
    if n < 2:
        raise BadParams("need n >= 2")
    return Arrangement(Line(Fraction(-k, n + 1 - k), k) for k in range(1, n + 1))


def _crossing_xs(lines):
    return [Fraction(num, d) for num, d, _, _ in _integer_crossings(lines)]


def _right_of_all(lines, slope):
    """Intercept for a new line of ``slope`` whose crossings all lie right of the current ones.

    ``slope`` must be below or above every existing slope.  The intercept is
    then moved away from the body one unit at a time until the crossing x
    values are pairwise distinct and no three lines meet.
    """
    xs = _crossing_xs(lines)
    margin = (max(xs) if xs else Fraction(0)) + 1
    # crossing with y = k*x + b lies at x = (b - g)/(slope - k)
    dks = [slope - ln.slope for ln in lines]
    need = [ln.intercept - dk * margin for ln, dk in zip(lines, dks)]
    if all(dk < 0 for dk in dks):
        g, step = max(need).__floor__() + 1, 1
    elif all(dk > 0 for dk in dks):
        g, step = min(need).__ceil__() - 1, -1
    else:
        raise ValueError("slope must be extreme")
    while True:
        try:
            cmsn_from_arrangement(Arrangement(list(lines) + [Line(slope, g)]))
            return g
        except (TieRejected, ConcurrentLines):
            g += step


def max_capacity_gmsn(n: int) -> Arrangement:
    """Body of ``n-2`` generic lines, then a collector and a distributor.

    The collector (slope 1, below every body slope) crosses all body lines to
    the right of the body; the distributor (slope ``n``) crosses the collector
    next and then every body line, so all but its own crossings reach everyone.
    """
    if n < 3:
        raise BadParams("need n >= 3")
    body: list[Line] = []
    seen: set[Fraction] = set()
    for k in range(2, n):
        # smallest nonnegative intercept keeping every crossing x distinct
        b = 0
        while True:
            xs = {Fraction(ln.intercept - b, k - ln.slope) for ln in body}
            if len(xs) == len(body) and not xs & seen:
                break
            b += 1
        seen |= xs
        body.append(Line(k, b))
    # slope 1 sits below the body slopes, so large-x crossings need a high intercept
    collector = Line(1, _right_of_all(body, Fraction(1)))
    lines = body + [collector]
    # the distributor must meet the collector before any body line
    xs = _crossing_xs(lines)
    margin = max(xs) + 1
    g = (collector.intercept - (n - 1) * margin).__floor__() - 1
    while True:
        cand = lines + [Line(n, g)]
        try:
            cmsn = cmsn_from_arrangement(Arrangement(cand))
        except (TieRejected, ConcurrentLines):
            g -= 1
            continue
        if set(cmsn.events[len(cmsn.events) - (n - 1)]) == {n - 1, n}:
            return Arrangement(cand)
        g -= 1


def grid(m: int, k: int) -> Arrangement:
    """``m`` lines of slope 1 above ``k`` lines of slope -1; requires ``m + k >= 3``."""
    if m < 1 or k < 1 or m + k < 3:
        raise BadParams("need m, k >= 1 and m + k >= 3")
    n = m + k
    return Arrangement(
        [Line(1, i * (n + 1)) for i in range(1, m + 1)] + [Line(-1, j) for j in range(1, k + 1)]
    )


def _rotated(kind, c, eps=Fraction(0)):
    """Image under ``(x, y) -> (x + y, y - x)`` of a pre-rotation line.

    ``kind`` is ``"h"`` for ``y = eps*x + c``, ``"v"`` for ``x = c`` and ``"d"``
    for ``x + 2y = c``.
    """
    if kind == "h":
        return Line((eps - 1) / (1 + eps), Fraction(2 * c) / (1 + eps))
    if kind == "v":
        return Line(1, -2 * c)
    return Line(-3, 2 * c)


def three_slope_arrangement(a: int, b: int, c: int, middle_slopes=None) -> Arrangement:
    """The rotated three-class pattern with ``a`` slope-1, ``b`` slope--1 and ``c`` slope--3 lines.

    Before rotation: ``b`` lines ``y = k`` (``0 <= k < b``), vertical lines
    ``x = 1..a-1`` plus ``x = 3*max(a, c) + 2b``, and ``c`` lines
    ``x + 2y = a + 2(b + k) - 3`` (``1 <= k <= c``).  ``middle_slopes`` (a list
    of ``b`` small offsets) tilts the horizontal lines; used by the
    multi-class family.
    """
    if min(a, b, c) < 1:
        raise BadParams("all three classes must be nonempty")
    eps = middle_slopes or [Fraction(0)] * b
    lines = [_rotated("h", k, eps[k]) for k in range(b)]
    lines += [_rotated("v", k) for k in range(1, a)]
    lines += [_rotated("d", a + 2 * (b + k) - 3) for k in range(1, c + 1)]
    lines.append(_rotated("v", 3 * max(a, c) + 2 * b))
    return Arrangement(lines)


def three_slope_optimal(n: int) -> Arrangement:
    """Best three-slope arrangement; class sizes from the closed-form candidates."""
    if n < 4:
        raise BadParams("need n >= 4")
    a, b, c = max3_sizes(n)
    return three_slope_arrangement(a, b, c)


def four_slope_sizes(n: int) -> tuple[int, int, int, int]:
    """``(a, b, c, d)`` = one slope-1 line, ``b`` slope--1, ``c`` slope--2, one slope--4."""
    m = n - 2
    return 1, m // 2, m - m // 2, 1


def four_slope_optimal(n: int) -> Arrangement:
    """Best four-slope arrangement.

    A ``b`` by ``c`` grid of slopes -1 and -2 comes first.  A single slope-1
    collector then crosses every grid line, and a single slope--4 distributor
    crosses the collector and afterwards every grid line.  Every crossing
    except the distributor's last ``n - 2`` reaches all ``n`` lines.
    """
    if n < 5:
        raise BadParams("need n >= 5")
    _, b, c, _ = four_slope_sizes(n)
    body = [Line(-1, (c + 1) * i) for i in range(b)] + [Line(-2, j) for j in range(c)]
    collector = Line(1, _right_of_all(body, Fraction(1)))
    lines = body + [collector]
    xs = _crossing_xs(lines)
    margin = max(xs) + 1
    # y = -4x + g meets the collector at x = (g - beta)/5
    g = (collector.intercept + 5 * margin).__ceil__() + 1
    while True:
        arr = Arrangement(lines + [Line(-4, g)])
        try:
            cmsn = cmsn_from_arrangement(arr)
        except (TieRejected, ConcurrentLines):
            g += 1
            continue
        break
    got = capacity(cmsn)
    if got != max4(n):
        raise ConstructionFailed(f"four-slope arrangement has capacity {got}, expected {max4(n)}")
    return arr


def _extreme_size_bound(n, s, a):
    """Upper bound on total deliveries with ``a`` lines in each extreme class."""
    m = n - 2 * a
    cs = _near_equal(m, s - 2)
    pairs = sum(cs[i] * cs[j] for i in range(len(cs)) for j in range(i + 1, len(cs)))
    lost = (n - 2 * a) * (2 * a - 1) * a + sum(i + j for i in range(a) for j in range(a))
    return n * (a * a + 2 * a * m + pairs) - lost


def _near_equal(m, k):
    return [m // k + (1 if j < m % k else 0) for j in range(k)]


def collector_distributor_family(n: int, s: int) -> Arrangement:
    """``s``-slope arrangement approaching the best absolute capacity.

    The two extreme classes hold ``a`` lines each, with ``a`` maximizing the
    delivery bound; the ``n - 2a`` middle lines split into ``s - 2`` near-equal
    classes.  Layout: the three-class pattern with the middle class tilted by
    tiny per-class offsets so that middle lines of different classes cross
    far to the left of everything else.
    """
    if s < 3 or n < s:
        raise BadParams("need n >= s >= 3")
    # the middle needs s - 2 nonempty classes
    top = (n - (s - 2)) // 2
    a = max(range(1, top + 1), key=lambda t: (_extreme_size_bound(n, s, t), -t))
    b = n - 2 * a
    sizes = _near_equal(b, s - 2)
    width = 3 * a + 2 * b + 10
    for attempt in range(1, 200):
        delta = Fraction(1, 10 * width * s * attempt)
        eps = []
        for j, cnt in enumerate(sizes):
            # non-linear offsets avoid three middle lines through one point
            eps += [delta * (j + Fraction(j * j, 7 * attempt + 3))] * cnt
        arr = three_slope_arrangement(a, b, a, middle_slopes=eps)
        try:
            cmsn_from_arrangement(arr, STABLE_IF_DISJOINT)
        except (TieRejected, ConcurrentLines):
            continue
        return arr
    raise ConstructionFailed("could not place middle classes generically")


def absolute_capacity_of(arr: Arrangement) -> Fraction:
    rep = deliveries(cmsn_from_arrangement(arr, STABLE_IF_DISJOINT))
    return Fraction(rep.total, arr.n * comb(arr.n, 2))
