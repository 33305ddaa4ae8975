"""Combinatorial networks and the exact capacity engine.

A network on sensors ``1..n`` is an ordered list of communication events, each
an unordered pair of sensors.  Event ``k`` *reaches* sensor ``x`` when a chain
of strictly later events, each sharing a sensor with the previous one, ends in
an event containing ``x``.  The capacity is the average number of sensors
reached per event, divided by ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Sequence

from msncap.errors import (
    DuplicatePair,
    EmptyNetwork,
    EventIndexOutOfRange,
    NotExhaustive,
    OutOfRangeId,
)

RCMSN = "rcmsn"
CMSN = "cmsn"


class Packet(NamedTuple):
    u: int
    v: int


@dataclass(frozen=True)
class Cmsn:
    """An event sequence on sensors ``1..n``.

    ``kind`` is ``"rcmsn"`` when every pair must occur exactly once, ``"cmsn"``
    when pairs may be missing.  Construction does not validate; call
    :func:`validate` (every public consumer does).
    """

    n: int
    events: tuple[Packet, ...]
    kind: str = CMSN

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]], kind: str | None = None) -> "Cmsn":
        """Build from unordered pairs; ``kind=None`` infers rcmsn when all pairs are present."""
        events = tuple(Packet(min(p), max(p)) for p in pairs)
        if kind is None:
            kind = RCMSN if len(events) == comb(n, 2) and len(set(events)) == len(events) else CMSN
        return cls(n, events, kind)

    def __len__(self) -> int:
        return len(self.events)

    def relabel(self, perm: Sequence[int]) -> "Cmsn":
        """Rename sensor ``x`` to ``perm[x - 1]``."""
        return Cmsn.from_pairs(self.n, ((perm[u - 1], perm[v - 1]) for u, v in self.events), self.kind)


@dataclass(frozen=True)
class CapacityReport:
    deliveries: tuple[int, ...]
    total: int
    capacity: Fraction
    absolute_capacity: Fraction


def validate(cmsn: Cmsn) -> None:
    """Raise if ``cmsn`` violates its invariants; return None otherwise."""
    n = cmsn.n
    seen = set()
    for k, (u, v) in enumerate(cmsn.events, 1):
        if not (1 <= u <= n and 1 <= v <= n) or u >= v:
            raise OutOfRangeId(f"event {k} = {{{u},{v}}} is not a pair u<v within 1..{n}")
        if (u, v) in seen:
            raise DuplicatePair(f"event {k} repeats pair {{{u},{v}}}")
        seen.add((u, v))
    if cmsn.kind == RCMSN and len(seen) != comb(n, 2):
        raise NotExhaustive(f"rcmsn on {n} sensors needs {comb(n, 2)} events, got {len(seen)}")
    if cmsn.kind not in (RCMSN, CMSN):
        raise ValueError(f"unknown kind {cmsn.kind!r}")


def reach_masks(cmsn: Cmsn) -> list[int]:
    """Bit set (bit ``x`` = sensor ``x``) of sensors reached by each event.

    Right-to-left sweep: ``M[x]`` holds what the next event involving ``x``
    reaches, which contains everything any later event on ``x`` reaches.
    """
    reach = [0] * (cmsn.n + 1)
    out = [0] * len(cmsn.events)
    for k in range(len(cmsn.events) - 1, -1, -1):
        u, v = cmsn.events[k]
        d = reach[u] | reach[v] | (1 << u) | (1 << v)
        reach[u] = reach[v] = d
        out[k] = d
    return out


def deliveries(cmsn: Cmsn) -> CapacityReport:
    validate(cmsn)
    n, L = cmsn.n, len(cmsn.events)
    if n < 2 or L == 0:
        raise EmptyNetwork("capacity is undefined for a network without events")
    counts = tuple(m.bit_count() for m in reach_masks(cmsn))
    total = sum(counts)
    return CapacityReport(
        deliveries=counts,
        total=total,
        capacity=Fraction(total, n * L),
        absolute_capacity=Fraction(total, n * comb(n, 2)),
    )


def capacity(cmsn: Cmsn) -> Fraction:
    return deliveries(cmsn).capacity


def absolute_capacity(cmsn: Cmsn) -> Fraction:
    return deliveries(cmsn).absolute_capacity


def hop_table(cmsn: Cmsn) -> list[list[int | None]]:
    """``table[k][x]``: fewest hops for event ``k`` (0-based) to reach sensor ``x``.

    Index 0 of each row is unused; ``None`` marks an unreachable sensor.
    """
    validate(cmsn)
    n = cmsn.n
    inf = len(cmsn.events) + 1
    best = [[inf] * (n + 1) for _ in range(n + 1)]
    table: list[list[int | None]] = [None] * len(cmsn.events)  # type: ignore[list-item]
    for k in range(len(cmsn.events) - 1, -1, -1):
        u, v = cmsn.events[k]
        bu, bv = best[u], best[v]
        h = [min(a, b) + 1 for a, b in zip(bu, bv)]
        h[u] = h[v] = 0
        best[u] = [min(a, b) for a, b in zip(bu, h)]
        best[v] = [min(a, b) for a, b in zip(bv, h)]
        table[k] = [None if x >= inf else x for x in h]
        table[k][0] = None
    return table


def min_hops(cmsn: Cmsn, k: int, x: int) -> int | None:
    """Fewest hops for event ``k`` (1-based, as in the chain definition) to reach ``x``."""
    validate(cmsn)
    if not 1 <= k <= len(cmsn.events):
        raise EventIndexOutOfRange(f"event index {k} outside 1..{len(cmsn.events)}")
    if not 1 <= x <= cmsn.n:
        raise OutOfRangeId(f"sensor {x} outside 1..{cmsn.n}")
    events = cmsn.events
    if x in events[k - 1]:
        return 0
    # breadth-first over later events; a chain only moves strictly right
    earliest = {k - 1: 0}
    hops = 0
    level = [k - 1]
    while level:
        hops += 1
        nxt = []
        for i in level:
            a = events[i]
            for j in range(i + 1, len(events)):
                b = events[j]
                if j in earliest or (a[0] not in b and a[1] not in b):
                    continue
                if x in b:
                    return hops
                earliest[j] = hops
                nxt.append(j)
        level = nxt
    return None
