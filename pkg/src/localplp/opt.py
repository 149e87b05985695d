"""Local optimisation of a parametric LP just right of zero.

``maximize c(d).x  s.t.  A(d) x <= b(d), x >= 0`` is reduced to three
feasibility questions about 1-PLP instances: the primal, the dual, and the
primal-dual system with ``c.x >= b.y``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    POSITIVE,
    PlpInstance,
    PolyMatrix,
    SideCertificate,
    Verdict,
    solve_side,
)
from .exact import Poly, RatFunc, RootBound


@dataclass(frozen=True)
class ParamLp:
    """``max c.x  s.t.  A x <= b,  x >= 0`` with polynomial data."""

    c: tuple[Poly, ...]
    A: PolyMatrix
    b: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.c) != self.A.cols:
            raise ValueError("objective length must equal the number of columns of A")
        if len(self.b) != self.A.rows:
            raise ValueError("b length must equal the number of rows of A")

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    def primal(self) -> PlpInstance:
        zero, one = Poly(), Poly.const(1)
        rows = [[-a for a in self.A.row(i)] for i in range(self.m)]
        rhs = [-p for p in self.b]
        for k in range(self.n):
            rows.append([one if j == k else zero for j in range(self.n)])
            rhs.append(zero)
        return PlpInstance(PolyMatrix(rows, self.n), tuple(rhs))

    def dual(self) -> PlpInstance:
        zero, one = Poly(), Poly.const(1)
        At = self.A.transpose()
        rows = [list(At.row(k)) for k in range(self.n)]
        rhs = list(self.c)
        for i in range(self.m):
            rows.append([one if j == i else zero for j in range(self.m)])
            rhs.append(zero)
        return PlpInstance(PolyMatrix(rows, self.m), tuple(rhs))

    def combined(self) -> PlpInstance:
        """Variables ``(x, y)``; primal rows, dual rows and ``c.x - b.y >= 0``."""
        zero = Poly()
        n, m = self.n, self.m
        P, D = self.primal(), self.dual()
        rows, rhs = [], []
        for i in range(P.m):
            rows.append(list(P.A.row(i)) + [zero] * m)
            rhs.append(P.b[i])
        for i in range(D.m):
            rows.append([zero] * n + list(D.A.row(i)))
            rhs.append(D.b[i])
        rows.append(list(self.c) + [-p for p in self.b])
        rhs.append(zero)
        return PlpInstance(PolyMatrix(rows, n + m), tuple(rhs))


class OptStatus(str, enum.Enum):
    LOCALLY_INFEASIBLE = "LocallyInfeasible"
    LOCALLY_UNBOUNDED = "LocallyUnbounded"
    LOCALLY_OPTIMAL = "LocallyOptimal"
    UNKNOWN_AT_CAP = "Unknown-at-cap"


@dataclass
class OptOutcome:
    status: OptStatus
    x: Optional[tuple[RatFunc, ...]] = None
    value: Optional[RatFunc] = None
    radius: Optional[RootBound] = None
    #: Dual solution from the primal-dual system, kept for auditing.
    y: Optional[tuple[RatFunc, ...]] = None
    certificates: tuple[SideCertificate, ...] = ()


def objective_value(c: Sequence[Poly], x: Sequence[RatFunc]) -> RatFunc:
    total = RatFunc.from_poly(Poly())
    for ck, xk in zip(c, x):
        total = total + xk * RatFunc.from_poly(ck)
    return total


def solve_local_opt(lp: ParamLp, degree_cap: Optional[int] = None) -> OptOutcome:
    primal = solve_side(lp.primal(), POSITIVE, degree_cap)
    if primal.verdict is Verdict.UNKNOWN_AT_CAP:
        return OptOutcome(OptStatus.UNKNOWN_AT_CAP, certificates=(primal,))
    if primal.verdict is Verdict.INFEASIBLE:
        return OptOutcome(OptStatus.LOCALLY_INFEASIBLE, certificates=(primal,))
    dual = solve_side(lp.dual(), POSITIVE, degree_cap)
    if dual.verdict is Verdict.UNKNOWN_AT_CAP:
        return OptOutcome(OptStatus.UNKNOWN_AT_CAP, certificates=(primal, dual))
    if dual.verdict is Verdict.INFEASIBLE:
        return OptOutcome(OptStatus.LOCALLY_UNBOUNDED, certificates=(primal, dual))
    both = solve_side(lp.combined(), POSITIVE, degree_cap)
    certs = (primal, dual, both)
    if both.verdict is Verdict.UNKNOWN_AT_CAP:
        return OptOutcome(OptStatus.UNKNOWN_AT_CAP, certificates=certs)
    if both.verdict is Verdict.INFEASIBLE:
        # primal and dual both feasible near 0+ forces a finite optimum, so this is a solver bug
        raise AssertionError("primal-dual system infeasible although primal and dual are feasible")
    x = both.solution[: lp.n]
    y = both.solution[lp.n:]
    return OptOutcome(
        OptStatus.LOCALLY_OPTIMAL,
        x=x,
        value=objective_value(lp.c, x),
        radius=both.radius,
        y=y,
        certificates=certs,
    )
