"""Line arrangements and the networks they generate.

Each sensor moves at constant speed, i.e. is a line ``y = slope*x + intercept``
on the time-position plane; two sensors communicate where their lines cross,
and events are ordered by the crossing's x-coordinate.  All ordering is exact.
"""

from __future__ import annotations

import logging
import zlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from msncap.core import CMSN, RCMSN, Cmsn, Packet
from msncap.errors import (
    ConcurrentLines,
    DegenerateSampler,
    IdenticalLines,
    InvalidMap,
    MsnError,
    TieRejected,
)

log = logging.getLogger(__name__)

REJECT = "reject"
STABLE_IF_DISJOINT = "stable-if-disjoint"

DYADIC_BITS = 53
MAX_REJECTIONS = 1000


@dataclass(frozen=True)
class Line:
    """``y = slope*x + intercept``; ``slope=None`` is the vertical line ``x = intercept``."""

    slope: Fraction | None
    intercept: Fraction

    def __post_init__(self):
        if self.slope is not None:
            object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    @property
    def vertical(self) -> bool:
        return self.slope is None

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class Arrangement:
    """Lines indexed by sensor id: ``lines[i - 1]`` is sensor ``i``."""

    lines: tuple[Line, ...]

    def __init__(self, lines: Iterable[Line]):
        object.__setattr__(self, "lines", tuple(lines))

    @property
    def n(self) -> int:
        return len(self.lines)

    def slopes(self) -> list[Fraction | None]:
        return [ln.slope for ln in self.lines]

    def slope_classes(self) -> list[int]:
        """Class index per line, 0 for the smallest slope; vertical lines sort last."""
        distinct = sorted({ln.slope for ln in self.lines}, key=_slope_key)
        rank = {s: i for i, s in enumerate(distinct)}
        return [rank[ln.slope] for ln in self.lines]


def _slope_key(s):
    return (1, 0) if s is None else (0, s)


def intersection(p: Line, q: Line) -> tuple[Fraction, Fraction] | None:
    """Crossing point of two lines, or None when parallel."""
    if p.slope == q.slope:
        if p.intercept == q.intercept:
            raise IdenticalLines("identical lines")
        return None
    if p.vertical:
        return p.intercept, q.at(p.intercept)
    if q.vertical:
        return q.intercept, p.at(q.intercept)
    x = (q.intercept - p.intercept) / (p.slope - q.slope)
    return x, p.at(x)


def _integer_crossings(lines: Sequence[Line]):
    """Crossing x-coordinates as ``(num, den)`` integer pairs with ``den > 0``."""
    den = 1
    for ln in lines:
        if ln.slope is not None:
            den = lcm(den, ln.slope.denominator)
        den = lcm(den, ln.intercept.denominator)
    K = [None if ln.slope is None else int(ln.slope * den) for ln in lines]
    B = [int(ln.intercept * den) for ln in lines]
    out = []
    for i, j in combinations(range(len(lines)), 2):
        ki, kj = K[i], K[j]
        if ki == kj:
            if B[i] == B[j]:
                raise IdenticalLines(f"lines {i + 1} and {j + 1} coincide")
            continue
        if ki is None:
            num, d = B[i], den
        elif kj is None:
            num, d = B[j], den
        else:
            num, d = B[j] - B[i], ki - kj
            if d < 0:
                num, d = -num, -d
        out.append((num, d, i, j))
    return out


def cmsn_from_arrangement(arr: Arrangement, tie_policy: str = REJECT) -> Cmsn:
    """Sort crossing pairs by exact x-coordinate.

    Equal x-coordinates are allowed only between disjoint pairs under
    ``tie_policy="stable-if-disjoint"`` (ordered lexicographically by pair);
    three lines through one point are always rejected.
    """
    if tie_policy not in (REJECT, STABLE_IF_DISJOINT):
        raise ValueError(f"unknown tie policy {tie_policy!r}")
    lines = arr.lines
    if len(lines) < 2:
        raise MsnError("an arrangement needs at least two lines")
    crossings = _integer_crossings(lines)
    if crossings:
        # floor(x * 2^shift) separates distinct rationals whose denominators are < 2^(shift/2)
        shift = 2 * max(d for _, d, _, _ in crossings).bit_length() + 1
        keyed = sorted(((num << shift) // d, i, j) for num, d, i, j in crossings)
    else:
        keyed = []
    events = []
    k = 0
    while k < len(keyed):
        m = k + 1
        while m < len(keyed) and keyed[m][0] == keyed[k][0]:
            m += 1
        if m - k > 1:
            _check_tie_group(lines, keyed[k:m], tie_policy)
        events.extend(Packet(i + 1, j + 1) for _, i, j in keyed[k:m])
        k = m
    distinct = len({ln.slope for ln in lines}) == len(lines)
    return Cmsn(len(lines), tuple(events), RCMSN if distinct else CMSN)


def _check_tie_group(lines, group, tie_policy):
    points = {}
    for _, i, j in group:
        pt = intersection(lines[i], lines[j])
        if pt in points:
            a, b = points[pt]
            raise ConcurrentLines(
                f"lines {sorted({a + 1, b + 1, i + 1, j + 1})} meet at one point"
            )
        points[pt] = (i, j)
    used = set()
    for _, i, j in group:
        if i in used or j in used or tie_policy == REJECT:
            raise TieRejected(f"crossings share x = {next(iter(points))[0]}")
        used.update((i, j))


def affine_image(arr: Arrangement, alpha, beta, gamma, delta, epsilon) -> Arrangement:
    """Image under ``x' = alpha*x + beta``, ``y' = gamma*x + delta*y + epsilon``.

    ``alpha > 0`` keeps the x-order of crossings, so the generated network is unchanged.
    """
    alpha, beta, gamma, delta, epsilon = map(Fraction, (alpha, beta, gamma, delta, epsilon))
    if alpha <= 0 or delta == 0:
        raise InvalidMap("need alpha > 0 and delta != 0")
    out = []
    for ln in arr.lines:
        if ln.vertical:
            out.append(Line(None, alpha * ln.intercept + beta))
        else:
            k = (gamma + delta * ln.slope) / alpha
            out.append(Line(k, delta * ln.intercept + epsilon - k * beta))
    return Arrangement(out)


# ---------------------------------------------------------------------------
# seeded samplers

def stream(seed: int, purpose: str, *index: int) -> np.random.Generator:
    """PCG64 stream keyed by ``(seed, purpose, *index)``; independent of call order."""
    tag = zlib.crc32(purpose.encode())
    ss = np.random.SeedSequence(entropy=int(seed) % 2**64, spawn_key=(tag, *index))
    return np.random.Generator(np.random.PCG64(ss))


def _dyadic(rng: np.random.Generator, size: int) -> list[Fraction]:
    draws = rng.integers(0, 2**DYADIC_BITS, size=size, dtype=np.uint64)
    return [Fraction(int(k), 2**DYADIC_BITS) for k in draws]


def draw_gmsn(n: int, seed: int, trial: int = 0) -> tuple[Arrangement, Cmsn]:
    """Sample a generic arrangement and its network; degenerate draws are redrawn."""
    if n < 2:
        raise MsnError("need n >= 2")
    for attempt in range(MAX_REJECTIONS):
        rng = stream(seed, "gmsn", n, trial, attempt)
        slopes = _dyadic(rng, n)
        intercepts = _dyadic(rng, n)
        if len(set(slopes)) < n:
            continue
        arr = Arrangement(Line(k, b) for k, b in zip(slopes, intercepts))
        try:
            cmsn = cmsn_from_arrangement(arr)
        except (TieRejected, ConcurrentLines):
            continue
        if attempt:
            log.info("gmsn sampler rejected %d degenerate draws", attempt)
        return arr, cmsn
    raise DegenerateSampler(f"{MAX_REJECTIONS} consecutive degenerate draws")


def sample_gmsn(n: int, seed: int, trial: int = 0) -> Arrangement:
    """Slopes and intercepts uniform on [0, 1) as dyadic rationals ``k / 2**53``."""
    return draw_gmsn(n, seed, trial)[0]


def draw_rgmsn(n: int, s: int, seed: int, trial: int = 0, redraw: int = 0) -> tuple[Arrangement, Cmsn, list[int]]:
    """Sample an ``s``-slope arrangement; also returns each line's class (0 = smallest slope).

    ``redraw > 0`` selects a fresh stream for the same trial, used by callers
    that discard draws with every line in one class.
    """
    if n < 2 or s < 1:
        raise MsnError("need n >= 2 and s >= 1")
    for attempt in range(MAX_REJECTIONS):
        if redraw:
            rng = stream(seed, "rgmsn-redraw", n, s, trial, redraw, attempt)
        else:
            rng = stream(seed, "rgmsn", n, s, trial, attempt)
        slopes = sorted(_dyadic(rng, s))
        classes = [int(c) for c in rng.integers(0, s, size=n)]
        intercepts = _dyadic(rng, n)
        if len(set(slopes)) < s:
            continue
        arr = Arrangement(Line(slopes[c], b) for c, b in zip(classes, intercepts))
        try:
            cmsn = cmsn_from_arrangement(arr)
        except (TieRejected, ConcurrentLines, IdenticalLines):
            continue
        if attempt:
            log.info("rgmsn sampler rejected %d degenerate draws", attempt)
        return arr, cmsn, classes
    raise DegenerateSampler(f"{MAX_REJECTIONS} consecutive degenerate draws")


def sample_rgmsn(n: int, s: int, seed: int, trial: int = 0) -> Arrangement:
    return draw_rgmsn(n, s, seed, trial)[0]
