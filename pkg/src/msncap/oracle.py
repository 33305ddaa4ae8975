"""Brute-force references for the main algorithms.

Nothing here shares code with the routines it checks: the chain oracle walks
the definition forwards, the wiring oracle tries every initial order, and the
Fourier--Motzkin eliminator knows nothing about the simplex.  All of them are
exponential or high-degree polynomial and guard their input size.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from msncap.core import CapacityReport, Cmsn
from msncap.errors import EmptyNetwork, TooLarge
from msncap.lp import EQ, GE, GT, LE, LT, LinearSystem

CHAIN_LIMIT = 12
FM_LIMIT = 8


def capacity_chain_oracle(cmsn: Cmsn) -> CapacityReport:
    """Deliveries by forward propagation: start from ``a_k`` and absorb every later event it meets."""
    n, ev = cmsn.n, cmsn.events
    if n > CHAIN_LIMIT:
        raise TooLarge(f"chain oracle limited to n <= {CHAIN_LIMIT}")
    if n < 2 or not ev:
        raise EmptyNetwork("no events")
    counts = []
    for k in range(len(ev)):
        reached = set(ev[k])
        for j in range(k + 1, len(ev)):
            if reached.intersection(ev[j]):
                reached.update(ev[j])
        counts.append(len(reached))
    total = sum(counts)
    return CapacityReport(
        deliveries=tuple(counts),
        total=total,
        capacity=Fraction(total, n * len(ev)),
        absolute_capacity=Fraction(total, n * comb(n, 2)),
    )


def min_hops_oracle(cmsn: Cmsn, k: int, x: int) -> int | None:
    """Shortest chain ``a_k = c_1, c_2, ..., c_m`` with ``x`` in ``c_m``, by exhaustive search.

    ``k`` is 1-based.  Returns ``m - 1`` or None.
    """
    ev = cmsn.events
    best = None

    def walk(i, depth):
        nonlocal best
        if best is not None and depth >= best:
            return
        if x in ev[i]:
            best = depth
            return
        for j in range(i + 1, len(ev)):
            if set(ev[i]) & set(ev[j]):
                walk(j, depth + 1)

    walk(k - 1, 0)
    return best


def all_rcmsns(n: int):
    pairs = list(combinations(range(1, n + 1), 2))
    for order in permutations(pairs):
        yield Cmsn(n, order, "rcmsn")


def enumerate_rcmsn_extremes(n: int):
    """``(min, max, argmin, argmax)`` capacity over every ordering of the pairs (``n <= 4``)."""
    if n > 4:
        raise TooLarge("exhaustive enumeration limited to n <= 4")
    lo = hi = None
    argmin = argmax = None
    for c in all_rcmsns(n):
        cap = capacity_chain_oracle(c).capacity
        if lo is None or cap < lo:
            lo, argmin = cap, c
        if hi is None or cap > hi:
            hi, argmax = cap, c
    return lo, hi, argmin, argmax


def expabs2_exact(n: int) -> tuple[Fraction, Fraction]:
    """Expected and best absolute capacity of a two-slope network by direct summation.

    A grid with ``m`` and ``n - m`` lines has absolute capacity
    ``m(n-m)(n+2)/(n^2(n-1))``; each line picks its slope by a fair coin.
    """
    if n < 3:
        raise TooLarge("need n >= 3")  # formula undefined below three lines
    vals = [Fraction(m * (n - m) * (n + 2), n * n * (n - 1)) for m in range(n + 1)]
    expected = sum(comb(n, m) * v for m, v in enumerate(vals)) / 2**n
    return expected, max(vals)


def max3_oracle(n: int) -> tuple[Fraction, tuple[int, int, int]]:
    """Exhaustive maximum of the three-slope capacity expression over integer sizes ``a, b, c >= 1``."""
    best = None
    for a in range(1, n - 1):
        for c in range(1, n - a):
            b = n - a - c
            val = Fraction(2 * b + a + c + 2, 2 * n) - Fraction(n - 1, 2 * n) * Fraction(b, a * b + b * c + c * a)
            if best is None or val > best[0]:
                best = (val, (a, b, c))
    return best


def max4_oracle(n: int) -> tuple[Fraction, tuple[int, int, int, int]]:
    """Exhaustive maximum of the same-direction four-slope expression over sizes ``>= 1``."""
    best = None
    for a in range(1, n - 2):
        for b in range(1, n - a - 1):
            for c in range(1, n - a - b):
                d = n - a - b - c
                bc = b + c
                den = a * d + b * c + (a + d) * bc
                val = Fraction(a + d + 2 * bc + 1, 2 * n) + Fraction(a * d + b * c * (a + d - 1) + bc - bc * bc, 2 * n * den)
                if best is None or val > best[0]:
                    best = (val, (a, b, c, d))
    return best


def wiring_orders(cmsn: Cmsn, limit: int | None = None) -> list[tuple[int, ...]]:
    """Every initial order under which each event swaps two adjacent wires."""
    found = []
    for sigma in permutations(range(1, cmsn.n + 1)):
        row = list(sigma)
        ok = True
        for u, v in cmsn.events:
            i, j = row.index(u), row.index(v)
            if abs(i - j) != 1:
                ok = False
                break
            row[i], row[j] = v, u
        if ok:
            found.append(sigma)
            if limit and len(found) >= limit:
                break
    return found


def wiring_exists(cmsn: Cmsn) -> bool:
    return bool(wiring_orders(cmsn, limit=1))


# ---------------------------------------------------------------------------
# Fourier--Motzkin


def fm_feasibility(sys: LinearSystem) -> bool:
    """Exact feasibility by Fourier--Motzkin elimination (at most 8 variables).

    Rows are kept as ``a.x > r`` or ``a.x >= r``.  Combined rows whose parent
    set exceeds the number of eliminated variables plus one are dropped
    (Chernikov's rule): they are implied by the others.  Duplicates are
    merged only when one parent set contains the other.
    """
    if sys.num_vars > FM_LIMIT:
        raise TooLarge(f"Fourier-Motzkin limited to {FM_LIMIT} variables")
    rows = []  # (coeffs, strict, rhs, parents)
    idx = 0
    for con in sys.constraints:
        a, r = list(con.coeffs), con.rhs
        forms = {
            GT: [(a, True, r)],
            GE: [(a, False, r)],
            LT: [([-v for v in a], True, -r)],
            LE: [([-v for v in a], False, -r)],
            EQ: [(a, False, r), ([-v for v in a], False, -r)],
        }[con.rel]
        for coeffs, strict, rhs in forms:
            rows.append((coeffs, strict, rhs, frozenset([idx])))
            idx += 1
    for step, var in enumerate(range(sys.num_vars)):
        pos, neg, keep = [], [], []
        for row in rows:
            c = row[0][var]
            (pos if c > 0 else neg if c < 0 else keep).append(row)
        seen: dict = {}
        for row in keep:
            _add(seen, row)
        for p in pos:
            for q in neg:
                parents = p[3] | q[3]
                if len(parents) > step + 2:
                    continue
                fp, fq = -q[0][var], p[0][var]
                coeffs = [fp * x + fq * y for x, y in zip(p[0], q[0])]
                _add(seen, (coeffs, p[1] or q[1], fp * p[2] + fq * q[2], parents))
        rows = [row for copies in seen.values() for row in copies]
    for coeffs, strict, rhs, _ in rows:
        if strict and not 0 > rhs:
            return False
        if not strict and not 0 >= rhs:
            return False
    return True


def _add(seen, row):
    """Keep ``row`` unless an identical row has a subset of its parents.

    Identical rows with incomparable parent sets are all kept: the pruning
    rule above depends on the parent set, so one copy cannot stand in for
    another.
    """
    copies = seen.setdefault(_normalized(row), [])
    if any(other[3] <= row[3] for other in copies):
        return
    copies[:] = [other for other in copies if not row[3] <= other[3]]
    copies.append(row)


def _normalized(row):
    coeffs, strict, rhs, _ = row
    scale = next((abs(c) for c in coeffs if c), abs(rhs) or 1)
    return tuple(c / scale for c in coeffs), strict, rhs / scale
