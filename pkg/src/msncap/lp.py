"""Exact rational linear programming.

A dense two-phase tableau simplex with Bland's rule, run over ``Fraction``
so every verdict is exact.  Two entry points sit on top of it:

* :func:`feasible_strict` decides a homogeneous system of ``> 0``, ``>= 0``
  and ``= 0`` constraints.  A homogeneous cone is invariant under positive
  scaling, so ``c.x > 0`` can be replaced by ``c.x >= 1``.
* :func:`maximize_linear_fractional` maximizes ``(c.x + c0)/(d.x + d0)``
  through the Charnes--Cooper substitution ``y = t*x``, ``t = 1/(d.x + d0)``.

Instances are small (tens of variables, at most a few hundred rows).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from msncap.errors import MalformedSystem

GT, GE, EQ, LE, LT = ">", ">=", "=", "<=", "<"
RELATIONS = (GT, GE, EQ, LE, LT)
_FLIP = {GT: LT, GE: LE, EQ: EQ, LE: GE, LT: GT}


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x  rel  rhs``."""

    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise MalformedSystem(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))
        return {
            GT: lhs > self.rhs,
            GE: lhs >= self.rhs,
            EQ: lhs == self.rhs,
            LE: lhs <= self.rhs,
            LT: lhs < self.rhs,
        }[self.rel]


@dataclass
class LinearSystem:
    num_vars: int
    constraints: list[Constraint] = field(default_factory=list)

    def add(self, coeffs, rel: str, rhs=0) -> None:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.num_vars:
            raise MalformedSystem(f"expected {self.num_vars} coefficients, got {len(coeffs)}")
        self.constraints.append(Constraint(coeffs, rel, rhs))

    @property
    def homogeneous(self) -> bool:
        return all(c.rhs == 0 for c in self.constraints)

    def check(self) -> None:
        for k, c in enumerate(self.constraints):
            if len(c.coeffs) != self.num_vars:
                raise MalformedSystem(f"constraint {k} has {len(c.coeffs)} coefficients, expected {self.num_vars}")


@dataclass(frozen=True)
class Witness:
    values: tuple[Fraction, ...]

    def satisfies(self, sys: LinearSystem) -> bool:
        return all(c.holds(self.values) for c in sys.constraints)


@dataclass(frozen=True)
class Infeasible:
    note: str = ""

    def __bool__(self):
        return False


@dataclass(frozen=True)
class LfpResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    attained: bool = True  # False when the optimum is only a supremum (t -> 0 limit)


# ---------------------------------------------------------------------------
# simplex core


class _Tableau:
    """``max c.z`` subject to ``A z = b``, ``z >= 0``, ``b >= 0``, with a known basis."""

    def __init__(self, rows, rhs, basis):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)

    def pivot(self, r, j):
        T = self.T
        prow = T[r]
        p = prow[j]
        if p != 1:
            prow[:] = [v / p for v in prow]
        for i, row in enumerate(T):
            if i != r:
                f = row[j]
                if f:
                    row[:] = [a - f * b if b else a for a, b in zip(row, prow)]
        self.basis[r] = j

    def run(self, cost, banned=frozenset()):
        """Bland's rule; returns ``"optimal"`` or ``"unbounded"``."""
        T = self.T
        ncols = len(T[0]) - 1 if T else len(cost)
        while True:
            cb = [cost[b] for b in self.basis]
            enter = None
            for j in range(ncols):
                if j in banned or j in self.basis:
                    continue
                red = cost[j] - sum((cb[i] * T[i][j] for i in range(len(T)) if cb[i] and T[i][j]), Fraction(0))
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)

    def values(self, ncols):
        z = [Fraction(0)] * ncols
        for i, b in enumerate(self.basis):
            z[b] = self.T[i][-1]
        return z


def solve_lp(num_vars, rows, objective=None, nonneg=()):
    """Maximize ``objective . x`` over ``rows`` of ``(coeffs, rel, rhs)``; strict rows are rejected.

    Variables are free unless their index is in ``nonneg``.  Returns
    ``(status, x, value)`` with status ``"optimal"``, ``"unbounded"`` or
    ``"infeasible"``.
    """
    nonneg = set(nonneg)
    # free variables split as x = p - q
    cols = []  # (var, sign)
    for v in range(num_vars):
        cols.append((v, 1))
        if v not in nonneg:
            cols.append((v, -1))
    nx = len(cols)
    A, b, kinds = [], [], []
    for coeffs, rel, rhs in rows:
        if rel in (GT, LT):
            raise MalformedSystem("strict rows must be converted before solve_lp")
        row = [Fraction(coeffs[v]) * s for v, s in cols]
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
            rel = _FLIP[rel]
        A.append(row)
        b.append(rhs)
        kinds.append(rel)
    m = len(A)
    # slack/surplus then artificial columns
    extra = []
    basis = [None] * m
    nslack = sum(1 for k in kinds if k != EQ)
    slack_at = nx
    art_at = nx + nslack
    art_cols = []
    for i, k in enumerate(kinds):
        col = [Fraction(0)] * m
        if k == LE:
            col[i] = Fraction(1)
            basis[i] = slack_at
            extra.append(col)
            slack_at += 1
        elif k == GE:
            col[i] = Fraction(-1)
            extra.append(col)
            slack_at += 1
    art = []
    for i, k in enumerate(kinds):
        if basis[i] is None:
            col = [Fraction(0)] * m
            col[i] = Fraction(1)
            art.append(col)
            basis[i] = art_at + len(art_cols)
            art_cols.append(basis[i])
    full = [A[i] + [c[i] for c in extra] + [c[i] for c in art] for i in range(m)]
    ncols = nx + len(extra) + len(art)
    tab = _Tableau(full, b, basis)
    if art_cols:
        c1 = [Fraction(0)] * ncols
        for j in art_cols:
            c1[j] = Fraction(-1)
        tab.run(c1)
        z = tab.values(ncols)
        if any(z[j] for j in art_cols):
            return "infeasible", None, None
        # drive zero-level artificials out of the basis
        artset = set(art_cols)
        r = 0
        while r < len(tab.T):
            if tab.basis[r] in artset:
                j = next((j for j in range(ncols) if j not in artset and tab.T[r][j] != 0), None)
                if j is None:
                    del tab.T[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1
        banned = artset
    else:
        banned = frozenset()
    c2 = [Fraction(0)] * ncols
    if objective is not None:
        for j, (v, s) in enumerate(cols):
            c2[j] = Fraction(objective[v]) * s
    status = tab.run(c2, banned)
    z = tab.values(ncols)
    x = [Fraction(0)] * num_vars
    for j, (v, s) in enumerate(cols):
        x[v] += s * z[j]
    if status == "unbounded":
        return "unbounded", x, None
    value = sum((Fraction(objective[v]) * x[v] for v in range(num_vars)), Fraction(0)) if objective is not None else Fraction(0)
    return "optimal", x, value


# ---------------------------------------------------------------------------
# public entry points


def feasible_strict(sys: LinearSystem) -> Witness | Infeasible:
    """Witness of a homogeneous system, or Infeasible.

    Each ``c.x > 0`` becomes ``c.x >= 1``; any solution of the original
    system can be scaled to satisfy the new one, so feasibility is unchanged.
    The witness is checked by exact substitution before it is returned.
    """
    sys.check()
    if not sys.homogeneous:
        raise MalformedSystem("feasible_strict needs a homogeneous system")
    rows = []
    for c in sys.constraints:
        if c.rel == GT:
            rows.append((c.coeffs, GE, 1))
        elif c.rel == LT:
            rows.append((c.coeffs, LE, -1))
        else:
            rows.append((c.coeffs, c.rel, 0))
    status, x, _ = solve_lp(sys.num_vars, rows)
    if status == "infeasible":
        return Infeasible("simplex phase one")
    w = Witness(tuple(x))
    if not w.satisfies(sys):
        raise AssertionError("simplex returned a point violating the system")
    return w


def maximize_linear_fractional(objective, sys: LinearSystem) -> LfpResult:
    """Maximize ``(c.x + c0)/(d.x + d0)`` over the closure of ``sys``.

    ``objective`` is ``(c, d)`` or ``(c, d, c0, d0)``; the caller guarantees
    ``d.x + d0 > 0`` on the feasible region.  Strict constraints are relaxed to
    their closure, so the result is the supremum; ``attained`` is False when
    that supremum is reached only in the limit ``t -> 0``.
    """
    sys.check()
    if len(objective) == 2:
        c, d = objective
        c0 = d0 = Fraction(0)
    else:
        c, d, c0, d0 = objective
    n = sys.num_vars
    closure = [(con.coeffs, {GT: GE, LT: LE}.get(con.rel, con.rel), con.rhs) for con in sys.constraints]
    if solve_lp(n, closure)[0] == "infeasible":
        return LfpResult("infeasible")
    # variables y_0..y_{n-1}, t (index n), t >= 0
    rows = []
    for con in sys.constraints:
        rel = {GT: GE, LT: LE}.get(con.rel, con.rel)
        rows.append((tuple(con.coeffs) + (-con.rhs,), rel, 0))
    rows.append((tuple(Fraction(v) for v in d) + (Fraction(d0),), EQ, 1))
    obj = tuple(Fraction(v) for v in c) + (Fraction(c0),)
    status, y, value = solve_lp(n + 1, rows, obj, nonneg={n})
    if status == "infeasible":
        return LfpResult("infeasible")
    if status == "unbounded":
        return LfpResult("unbounded")
    t = y[n]
    if t > 0:
        return LfpResult("optimal", value, tuple(v / t for v in y[:n]), True)
    return LfpResult("optimal", value, None, False)
