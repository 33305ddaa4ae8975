"""Wiring diagrams: pseudoline arrangements as adjacent-transposition sequences.

A wiring diagram is an initial top-to-bottom labelling ``sigma`` plus the
positions ``a_k`` (1-based, ``1..n-1``) at which the wires at heights
``a_k`` and ``a_k + 1`` cross.  Reading it gives an RCMSN; inverting that
reading either recovers the diagram (unique up to mirror image) or proves
that no pseudoline arrangement produces the network.
"""

from __future__ import annotations

from dataclasses import dataclass

from msncap.core import CMSN, RCMSN, Cmsn, Packet, validate
from msncap.errors import MsnError, NonRealizable, RepeatedCrossing

LITERAL = "literal"
FIXED = "fixed"
DEFAULT_VARIANT = FIXED  # chosen by agreement with the exhaustive oracle


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    sigma: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "a", tuple(self.a))
        if sorted(self.sigma) != list(range(1, self.n + 1)):
            raise MsnError("sigma must be a permutation of 1..n")
        if any(not 1 <= p <= self.n - 1 for p in self.a):
            raise MsnError(f"positions must lie in 1..{self.n - 1}")

    def mirror(self) -> "WiringDiagram":
        """Same arrangement read bottom to top."""
        return WiringDiagram(self.n, self.sigma[::-1], tuple(self.n - p for p in self.a))


def rcmsn_from_wiring(w: WiringDiagram) -> Cmsn:
    """Replay the transpositions; each crossing emits the pair of wires it swaps."""
    tau = list(w.sigma)
    seen = set()
    events = []
    for k, p in enumerate(w.a, 1):
        u, v = tau[p - 1], tau[p]
        pair = Packet(min(u, v), max(u, v))
        if pair in seen:
            raise RepeatedCrossing(f"wires {pair.u} and {pair.v} cross again at step {k}")
        seen.add(pair)
        events.append(pair)
        tau[p - 1], tau[p] = v, u
    kind = RCMSN if len(events) == w.n * (w.n - 1) // 2 else CMSN
    return Cmsn(w.n, tuple(events), kind)


class _Path:
    """Undirected graph of maximum degree two with union-find for cycle checks."""

    def __init__(self, n):
        self.adj = {i: [] for i in range(1, n + 1)}
        self.parent = list(range(n + 1))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def degree(self, x):
        return len(self.adj[x])

    def linked(self, x, y):
        return y in self.adj[x]

    def link(self, x, y):
        self.adj[x].append(y)
        self.adj[y].append(x)
        self.parent[self.find(x)] = self.find(y)

    def readings(self):
        """The two end-to-end readings, components joined in order of their least element."""
        seen = set()
        parts = []
        for start in sorted(self.adj):
            if start in seen:
                continue
            comp, stack = {start}, [start]
            while stack:
                for y in self.adj[stack.pop()]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            ends = [x for x in comp if len(self.adj[x]) < 2]
            cur, prev = min(ends or comp), None
            chain = [cur]
            while True:
                nxt = [y for y in self.adj[cur] if y != prev and y not in chain]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                chain.append(cur)
            seen.update(comp)
            parts.append(chain)
        forward = [x for part in parts for x in part]
        return forward, forward[::-1]


def infer_slot_order(cmsn: Cmsn, variant: str = DEFAULT_VARIANT) -> list[int]:
    """Initial top-to-bottom order from the crossing adjacencies.

    Each line starts in its own slot; a crossing swaps the slots of its two
    lines and proves those slots are neighbours.  The neighbour relation must
    form a path.  ``variant="literal"`` checks degrees before the "already
    linked" test and skips the swap for linked slots; ``"fixed"`` swaps in
    that case too and rejects only a third neighbour or a cycle.
    """
    if variant not in (LITERAL, FIXED):
        raise ValueError(f"unknown variant {variant!r}")
    n = cmsn.n
    tau = list(range(n + 1))
    t = _Path(n)
    for k, (x, y) in enumerate(cmsn.events, 1):
        sx, sy = tau[x], tau[y]
        if variant == LITERAL:
            if t.degree(sx) == 2 or t.degree(sy) == 2:
                raise NonRealizable("a slot would get a third neighbour", index=k)
            if not t.linked(sx, sy):
                t.link(sx, sy)
                tau[x], tau[y] = sy, sx
            continue
        if not t.linked(sx, sy):
            if t.degree(sx) == 2 or t.degree(sy) == 2:
                raise NonRealizable("a slot would get a third neighbour", index=k)
            if t.find(sx) == t.find(sy):
                raise NonRealizable("slot neighbours would close a cycle", index=k)
            t.link(sx, sy)
        tau[x], tau[y] = sy, sx
    forward, backward = t.readings()
    return min(forward, backward)


def replay(cmsn: Cmsn, sigma) -> tuple[int, ...]:
    """Positions ``a_k`` for the initial order ``sigma``; raises when two crossing lines are not adjacent."""
    pos = {x: i for i, x in enumerate(sigma, 1)}
    out = []
    for k, (x, y) in enumerate(cmsn.events, 1):
        px, py = pos[x], pos[y]
        if abs(px - py) != 1:
            raise NonRealizable(f"lines {x} and {y} are not adjacent when they meet", index=k)
        p = min(px, py)
        out.append(p)
        pos[x], pos[y] = py, px
    return tuple(out)


def wiring_from_rcmsn(cmsn: Cmsn, variant: str = DEFAULT_VARIANT) -> WiringDiagram:
    """Canonical wiring diagram generating ``cmsn``, or NonRealizable with the failing event.

    Of the two mirror-image readings the one with lexicographically smaller
    ``sigma`` is returned.
    """
    validate(cmsn)
    sigma = infer_slot_order(cmsn, variant)
    a = replay(cmsn, sigma)
    return WiringDiagram(cmsn.n, tuple(sigma), a)


def is_pseudo_realizable(cmsn: Cmsn) -> bool:
    try:
        wiring_from_rcmsn(cmsn)
    except NonRealizable:
        return False
    return True
