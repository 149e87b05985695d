"""Local feasibility of one-parameter polynomial linear programs.

An instance is ``A(d) x >= b(d)`` with polynomial entries in ``d``. On the
positive side we look for a solution ``x = p(d) / q(d)`` with
``q = d^c (1 + d q1(d))``. Clearing the denominator turns every constraint
into a polynomial ``f_i = A_i p - d^(c+1) q1 b_i - d^c b_i`` whose
coefficients are affine in the unknown coefficients of ``p`` and ``q1``.
The constraint holds just right of zero iff the first nonzero coefficient
of ``f_i`` is positive, or ``f_i`` vanishes identically. Deciding whether
such a coefficient point exists is a subspace-elimination problem.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .exact import (
    NEG_INF,
    ONE,
    ZERO,
    Poly,
    Rat,
    RatFunc,
    RootBound,
    count_positive_roots,
    common_denominator,
    positive_near_zero,
    rat,
    smallest_positive_root_bound,
)
from .lp import (
    STATS,
    AffineSubspace,
    LinConstraint,
    LinProgram,
    LpOutcome,
    LpStatus,
    Sense,
    lp_feasible,
    max_uniform_slack,
    solve_ge,
)

log = logging.getLogger(__name__)

#: ``(coeffs, const)`` standing for ``sum(coeffs[j] * x_j) + const``.
Form = tuple[dict, Rat]


# --- instances ----------------------------------------------------------------

@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[Poly, ...], ...]
    cols: int

    def __init__(self, entries: Sequence[Sequence], cols: Optional[int] = None):
        rows = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.entries[i]

    @property
    def max_degree(self):
        return max((e.degree for row in self.entries for e in row), default=NEG_INF)

    @property
    def max_bits(self) -> int:
        bits = 0
        for row in self.entries:
            for e in row:
                for c in e.coeffs:
                    bits = max(bits, int(c.numerator).bit_length(), int(c.denominator).bit_length())
        return bits

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries], self.cols)


@dataclass(frozen=True)
class PlpInstance:
    """``A(d) x >= b(d)``."""

    A: PolyMatrix
    b: tuple[Poly, ...]

    def __post_init__(self):
        b = tuple(e if isinstance(e, Poly) else Poly.const(e) for e in self.b)
        object.__setattr__(self, "b", b)
        if len(b) != self.A.rows:
            raise ValueError(f"b has length {len(b)} but A has {self.A.rows} rows")

    @classmethod
    def from_rows(cls, rows: Sequence[tuple[Sequence, object]], n: Optional[int] = None) -> "PlpInstance":
        """Build from ``[(row, rhs), ...]``; entries may be Poly, ints or coefficient lists."""

        def as_poly(v):
            if isinstance(v, Poly):
                return v
            if isinstance(v, (list, tuple)):
                return Poly(v)
            return Poly.const(v)

        A = PolyMatrix([[as_poly(v) for v in row] for row, _ in rows], n)
        return cls(A, tuple(as_poly(r) for _, r in rows))

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def max_degree(self):
        return max([self.A.max_degree] + [p.degree for p in self.b])

    def full_bound(self) -> int:
        """``2 n D``: the degree bound that makes the positive-side search complete."""
        D = self.max_degree
        return 0 if D == NEG_INF else 2 * self.n * int(D)

    def evaluate(self, delta) -> LinProgram:
        delta = rat(delta)
        cons = [
            LinConstraint(tuple(a(delta) for a in self.A.row(i)), self.b[i](delta), Sense.GE)
            for i in range(self.m)
        ]
        return LinProgram(self.n, cons)

    def reflect(self) -> "PlpInstance":
        """Substitute ``d -> -d``."""
        return PlpInstance(self.A.map(Poly.reflect), tuple(p.reflect() for p in self.b))

    def substitute_scale(self, c) -> "PlpInstance":
        """Substitute ``d -> c d``."""
        return PlpInstance(self.A.map(lambda p: p.substitute_scale(c)), tuple(p.substitute_scale(c) for p in self.b))

    def slack_polys(self, p: Sequence[Poly], q: Poly) -> list[Poly]:
        """``A_i p - b_i q`` for every row."""
        out = []
        for i in range(self.m):
            f = -(self.b[i] * q)
            for a, pk in zip(self.A.row(i), p):
                if not a.is_zero():
                    f = f + a * pk
            out.append(f)
        return out


# --- coefficient chains ---------------------------------------------------------

@dataclass(frozen=True)
class CoeffSpace:
    n_vars: int
    c: int
    deg_p: int
    deg_q1: int

    def __post_init__(self):
        if min(self.n_vars, self.c, self.deg_p) < 0 or self.deg_q1 < -1:
            raise ValueError("coefficient-space caps must be nonnegative")

    @property
    def total_dim(self) -> int:
        return self.n_vars * (self.deg_p + 1) + (self.deg_q1 + 1)

    def p_index(self, k: int, j: int) -> int:
        """Unknown for the coefficient of ``d^j`` in ``p_k``."""
        return k * (self.deg_p + 1) + j

    def q1_index(self, j: int) -> int:
        return self.n_vars * (self.deg_p + 1) + j

    def label(self, idx: int) -> tuple[str, int, int]:
        base = self.n_vars * (self.deg_p + 1)
        if idx < base:
            return ("p", idx // (self.deg_p + 1), idx % (self.deg_p + 1))
        return ("q1", 0, idx - base)

    def decode(self, point: Sequence) -> tuple[list[Poly], Poly]:
        """Split a coefficient point into ``(p, q)``."""
        p = [Poly(point[self.p_index(k, 0): self.p_index(k, 0) + self.deg_p + 1]) for k in range(self.n_vars)]
        q1 = Poly(point[self.q1_index(0): self.q1_index(0) + self.deg_q1 + 1])
        q = (Poly.const(1) + q1.shift(1)).shift(self.c)
        return p, q


@dataclass(frozen=True)
class CoeffChain:
    constraint_index: int
    forms: tuple[Form, ...]

    def is_zero(self) -> bool:
        return not self.forms

    def evaluate(self, point: Sequence) -> Poly:
        """The polynomial ``sum(forms[j](point) d^j)``."""
        vals = []
        for coeffs, const in self.forms:
            vals.append(const + sum((v * rat(point[j]) for j, v in coeffs.items()), ZERO))
        return Poly(vals)


def build_coeff_chains(inst: PlpInstance, space: CoeffSpace) -> list[CoeffChain]:
    if space.n_vars != inst.n:
        raise ValueError("coefficient space and instance disagree on n")
    chains = []
    c = space.c
    for i in range(inst.m):
        b = inst.b[i]
        top = NEG_INF
        for a in inst.A.row(i):
            if not a.is_zero():
                top = max(top, a.degree + space.deg_p)
        if not b.is_zero():
            top = max(top, c + b.degree)
            if space.deg_q1 >= 0:
                top = max(top, c + 1 + space.deg_q1 + b.degree)
        if top == NEG_INF:
            chains.append(CoeffChain(i, ()))
            continue
        coeffs = [dict() for _ in range(int(top) + 1)]
        consts = [ZERO] * (int(top) + 1)
        for k, a in enumerate(inst.A.row(i)):
            for s, av in enumerate(a.coeffs):
                if av == 0:
                    continue
                for j in range(space.deg_p + 1):
                    var = space.p_index(k, j)
                    coeffs[s + j][var] = coeffs[s + j].get(var, ZERO) + av
        for s, bv in enumerate(b.coeffs):
            if bv == 0:
                continue
            consts[c + s] -= bv
            for j in range(space.deg_q1 + 1):
                var = space.q1_index(j)
                row = coeffs[c + 1 + j + s]
                row[var] = row.get(var, ZERO) - bv
        forms = tuple(({k: v for k, v in d.items() if v != 0}, k0) for d, k0 in zip(coeffs, consts))
        chains.append(CoeffChain(i, forms))
    return chains


# --- subspace elimination ---------------------------------------------------------

@dataclass(frozen=True)
class HalfAffineSubspace:
    """``{x : e(x) = 0 for e in equalities, strict(x) < 0}``."""

    equalities: tuple[Form, ...]
    strict: Form
    dim: int

    def __post_init__(self):
        space = AffineSubspace(self.dim)
        for coeffs, const in self.equalities:
            if not space.add(coeffs, const):
                raise ValueError("half-affine subspace has inconsistent equalities")
        red, c0 = space.reduce(*self.strict)
        if not red and c0 >= 0:
            raise ValueError("half-affine subspace is empty: strict part never negative on the hull")

    def contains(self, x: Sequence) -> bool:
        def val(f):
            return f[1] + sum((v * rat(x[j]) for j, v in f[0].items()), ZERO)

        return all(val(e) == 0 for e in self.equalities) and val(self.strict) < 0


def subspace_elimination_generic(spaces: Sequence[HalfAffineSubspace], ambient_dim: int) -> bool:
    """True iff ``R^N`` minus the union of ``spaces`` is nonempty.

    Keeps ``P`` as a list of ``>=`` rows. Whenever ``P`` lies inside the
    affine hull of some remaining ``B``, ``P`` cannot meet ``B``'s open part,
    so ``P`` is cut down to ``strict >= 0`` and ``B`` is dropped.
    """
    rows: list = []
    remaining = list(spaces)
    changed = True
    while changed:
        changed = False
        if solve_ge(ambient_dim, rows).status is LpStatus.INFEASIBLE:
            return False
        for B in list(remaining):
            if _inside_hull(rows, B, ambient_dim):
                coeffs, const = B.strict
                rows.append((dict(coeffs), -const))
                remaining.remove(B)
                changed = True
                break
    return solve_ge(ambient_dim, rows).status is not LpStatus.INFEASIBLE


def _inside_hull(rows: list, B: HalfAffineSubspace, dim: int) -> bool:
    for coeffs, const in B.equalities:
        for sign in (1, -1):
            obj = {j: sign * v for j, v in coeffs.items() if v != 0}
            if not obj:
                if const != 0:
                    return False
                continue
            out = solve_ge(dim, rows, obj)
            if out.status is not LpStatus.OPTIMAL or out.value != -sign * const:
                return False
    return True


@dataclass
class EliminationStats:
    lp_calls: int = 0
    promotions: int = 0
    rounds: int = 0


def subspace_elimination_plp(
    chains: Sequence[CoeffChain],
    space: CoeffSpace,
    mode: str = "batched",
    stats: Optional[EliminationStats] = None,
) -> Optional[list]:
    """A coefficient point making every chain's first nonzero entry positive, or None.

    ``mode="sequential"`` follows the textbook loop (one forced-zero test per
    chain per pass). ``mode="batched"`` finds all implicit equalities among
    the frontier coefficients with one LP per round; both reach the same
    fixpoint and return a relative-interior point of it.
    """
    if stats is None:
        stats = EliminationStats()
    if mode == "batched":
        return _eliminate_batched(chains, space.total_dim, stats)
    if mode == "sequential":
        return _eliminate_sequential(chains, space.total_dim, stats)
    raise ValueError(f"unknown elimination mode {mode!r}")


def _advance(aff: AffineSubspace, forms: Sequence[Form], ptr: int) -> tuple[int, Optional[str]]:
    """Skip frontier entries that are constant on ``aff``.

    Returns the new pointer and a tag: ``"empty"`` (a negative constant),
    ``"done"`` (positive constant or chain exhausted) or None (a genuine
    non-constant frontier).
    """
    while ptr < len(forms):
        red, c0 = aff.reduce(*forms[ptr])
        if red:
            return ptr, None
        if c0 < 0:
            return ptr, "empty"
        if c0 > 0:
            return ptr, "done"
        ptr += 1
    return ptr, "done"


def _eliminate_batched(chains: Sequence[CoeffChain], dim: int, stats: EliminationStats) -> Optional[list]:
    aff = AffineSubspace(dim)
    ptr = {ch.constraint_index: 0 for ch in chains if not ch.is_zero()}
    forms_of = {ch.constraint_index: ch.forms for ch in chains}
    while True:
        stats.rounds += 1
        frontier = []
        for i in sorted(ptr):
            j, tag = _advance(aff, forms_of[i], ptr[i])
            ptr[i] = j
            if tag == "empty":
                return None
            if tag == "done":
                del ptr[i]
                continue
            frontier.append(i)
        if not frontier:
            return aff.lift({})
        stats.lp_calls += 1
        t, point, duals = max_uniform_slack([forms_of[i][ptr[i]] for i in frontier], aff)
        if t < 0:
            return None
        if t > 0:
            return point
        # t == 0: the positively weighted frontiers sum to zero on P, so each vanishes on P
        for i, y in zip(frontier, duals):
            if y > 0:
                stats.promotions += 1
                aff.add(*forms_of[i][ptr[i]])
                ptr[i] += 1


def _eliminate_sequential(chains: Sequence[CoeffChain], dim: int, stats: EliminationStats) -> Optional[list]:
    eqs: list[Form] = []
    ptr = {ch.constraint_index: 0 for ch in chains if not ch.is_zero()}
    forms_of = {ch.constraint_index: ch.forms for ch in chains}

    def rows() -> list:
        out = []
        for coeffs, const in eqs:
            out.append((dict(coeffs), -const))
            out.append(({j: -v for j, v in coeffs.items()}, const))
        for i, j in ptr.items():
            if j < len(forms_of[i]):
                coeffs, const = forms_of[i][j]
                out.append((dict(coeffs), -const))
        return out

    changed = True
    while changed:
        changed = False
        stats.rounds += 1
        for i in sorted(ptr):
            forms = forms_of[i]
            if ptr[i] >= len(forms):
                continue
            coeffs, const = forms[ptr[i]]
            stats.lp_calls += 1
            current = rows()
            if solve_ge(dim, current).status is LpStatus.INFEASIBLE:
                return None
            forced = True
            if coeffs:
                # the frontier is >= 0 on P, so it is forced to zero iff its max is 0
                stats.lp_calls += 1
                out = solve_ge(dim, current, coeffs)
                forced = out.status is LpStatus.OPTIMAL and out.value + const == 0
            else:
                forced = const == 0
            if forced:
                stats.promotions += 1
                eqs.append(forms[ptr[i]])
                ptr[i] += 1
                changed = True
    aff = AffineSubspace(dim)
    for coeffs, const in eqs:
        if not aff.add(coeffs, const):
            return None
    frontier = [forms_of[i][j] for i, j in ptr.items() if j < len(forms_of[i])]
    stats.lp_calls += 1
    t, point, _ = max_uniform_slack(frontier, aff)
    if t < 0:
        return None
    if t == 0:
        raise AssertionError("sequential elimination stopped with an unpromoted implicit equality")
    return point


# --- sides ------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNKNOWN_AT_CAP = "Unknown-at-cap"


class Summary(str, enum.Enum):
    LOCALLY_FEASIBLE = "LocallyFeasible"
    LOCALLY_INFEASIBLE = "LocallyInfeasible"
    MIXED = "Mixed"
    #: Some side gave up at its cap and the decided parts agree with each other.
    UNDETERMINED = "Undetermined"


POSITIVE = "positive"
NEGATIVE = "negative"


PRIMAL = "primal"
FARKAS = "farkas"


@dataclass(frozen=True)
class Attempt:
    system: str
    c: int
    deg_p: int
    deg_q1: int
    found: bool
    lp_calls: int
    pivots: int


@dataclass
class SideCertificate:
    """Outcome for one side of zero.

    ``Feasible`` carries ``solution``. ``Infeasible`` may carry ``farkas``:
    multipliers ``y(d) >= 0`` with ``A^T y = 0`` and ``b.y >= 1`` on the
    radius, which is a proof by itself. An ``Infeasible`` without
    multipliers rests on the exhausted full-bound search instead.
    ``radius``, ``c_used`` and ``degrees_used`` describe whichever of the
    two rational-function vectors is present.
    """

    side: str
    verdict: Verdict
    solution: Optional[tuple[RatFunc, ...]] = None
    radius: Optional[RootBound] = None
    c_used: Optional[int] = None
    degrees_used: Optional[tuple[int, int]] = None
    farkas: Optional[tuple[RatFunc, ...]] = None
    attempts: list[Attempt] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE

    def valid_interval(self) -> tuple:
        """The open interval on which the certificate speaks, as ``(lo, hi)``; None is infinite."""
        if self.radius is None:
            return None
        r = None if self.radius.covers_everything() else self.radius.value
        if self.side == POSITIVE:
            return (ZERO, r)
        return (None if r is None else -r, ZERO)


def candidate_order(cap: int) -> Iterator[tuple[int, int, int]]:
    """All ``(c, deg_p, deg_q1)`` with entries in ``0..cap``, by total then lexicographically."""
    cands = itertools.product(range(cap + 1), repeat=3)
    yield from sorted(cands, key=lambda t: (sum(t), t))


def full_candidate(inst: PlpInstance) -> tuple[int, int, int]:
    """One candidate whose coefficient space contains every other within the 2nD bound.

    A solution with shift ``c' <= B`` is rewritten over the common shift ``B``
    by multiplying numerator and denominator by ``d^(B-c')``.
    """
    B = inst.full_bound()
    return B, 2 * B, max(B - 1, 0)


def covers_full_bound(cand: tuple[int, int, int], B: int) -> bool:
    c, dp, dq = cand
    return c >= B and dp >= c + B and dq >= B - 1


DEFAULT_SEARCH_DEPTH = 1


def _candidates(inst: PlpInstance, degree_cap: Optional[int], search_depth: int) -> tuple[list, bool]:
    """Candidate list and whether exhausting it proves infeasibility."""
    B = inst.full_bound()
    if degree_cap is None:
        cands = list(candidate_order(min(search_depth, 2 * B)))
        full = full_candidate(inst)
        if full not in cands:
            cands.append(full)
        return cands, True
    if degree_cap < 0:
        raise ValueError("degree cap must be nonnegative")
    cands = []
    for cand in candidate_order(degree_cap):
        cands.append(cand)
        if covers_full_bound(cand, B):
            return cands, True
    return cands, False


def farkas_instance(inst: PlpInstance) -> PlpInstance:
    """``{y : A^T y = 0, y >= 0, b.y >= 1}``; feasible near 0+ iff ``inst`` is not.

    Equalities are written as two opposite rows.
    """
    zero, one = Poly(), Poly.const(1)
    At = inst.A.transpose()
    rows, rhs = [], []
    for k in range(inst.n):
        rows.append(list(At.row(k)))
        rows.append([-a for a in At.row(k)])
        rhs += [zero, zero]
    for i in range(inst.m):
        rows.append([one if j == i else zero for j in range(inst.m)])
        rhs.append(zero)
    rows.append(list(inst.b))
    rhs.append(one)
    return PlpInstance(PolyMatrix(rows, inst.m), tuple(rhs))


def _solution_from_point(inst: PlpInstance, space: CoeffSpace, point: list) -> tuple[tuple, RootBound]:
    p, q = space.decode(point)
    polys = [f for f in inst.slack_polys(p, q) if not f.is_zero()] + [q]
    radius = smallest_positive_root_bound(polys)
    return tuple(RatFunc(pk, q) for pk in p), radius


def _try(work: PlpInstance, cand: tuple, mode: str, system: str, side: str, attempts: list) -> Optional[list]:
    c, dp, dq = cand
    space = CoeffSpace(work.n, c, dp, dq)
    calls0, piv0 = STATS.snapshot()
    point = subspace_elimination_plp(build_coeff_chains(work, space), space, mode=mode)
    calls1, piv1 = STATS.snapshot()
    attempts.append(Attempt(system, c, dp, dq, point is not None, calls1 - calls0, piv1 - piv0))
    log.info(
        "side=%s system=%s c=%d deg_p=%d deg_q1=%d dim=%d found=%s lp_calls=%d pivots=%d",
        side, system, c, dp, dq, space.total_dim, point is not None, calls1 - calls0, piv1 - piv0,
    )
    return point


def solve_side(
    inst: PlpInstance,
    side: str = POSITIVE,
    degree_cap: Optional[int] = None,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    mode: str = "batched",
    use_farkas: bool = True,
) -> SideCertificate:
    """Decide feasibility of ``inst`` on ``(0, eps)`` or ``(-eps, 0)`` for some ``eps > 0``.

    Candidates ``(c, deg_p, deg_q1)`` are tried in deepening order. Each one
    is tried for the instance itself and, when ``use_farkas`` is set, for its
    Farkas system, whose solution proves infeasibility directly.

    With ``degree_cap=None`` the search covers every candidate up to
    ``search_depth`` and then the single full-bound candidate, so the answer
    is always definitive. With an explicit cap only candidates inside the cap
    are tried; if none decides and none reaches the full bound, the verdict
    is ``Unknown-at-cap``.

    The negative side is solved as the positive side of ``d -> -d``; the
    returned vectors are in the original parameter and the radius
    polynomials are those of the reflected instance.
    """
    if side not in (POSITIVE, NEGATIVE):
        raise ValueError(f"side must be {POSITIVE!r} or {NEGATIVE!r}")
    work = inst if side == POSITIVE else inst.reflect()
    dual = farkas_instance(work) if use_farkas else None
    full = full_candidate(work)
    cands, complete = _candidates(work, degree_cap, search_depth)
    attempts: list[Attempt] = []

    def finish(verdict, target, cand, point, field_name):
        vec, radius = _solution_from_point(target, CoeffSpace(target.n, *cand), point)
        if side == NEGATIVE:
            vec = tuple(x.reflect() for x in vec)
        cert = SideCertificate(side, verdict, radius=radius, c_used=cand[0], degrees_used=cand[1:], attempts=attempts)
        setattr(cert, field_name, vec)
        return cert

    for cand in cands:
        point = _try(work, cand, mode, PRIMAL, side, attempts)
        if point is not None:
            return finish(Verdict.FEASIBLE, work, cand, point, "solution")
        if dual is not None and not (complete and covers_full_bound(cand, full[0])):
            point = _try(dual, cand, mode, FARKAS, side, attempts)
            if point is not None:
                return finish(Verdict.INFEASIBLE, dual, cand, point, "farkas")
    verdict = Verdict.INFEASIBLE if complete else Verdict.UNKNOWN_AT_CAP
    return SideCertificate(side=side, verdict=verdict, attempts=attempts)


@dataclass
class LocalClassification:
    negative: SideCertificate
    origin: LpOutcome
    positive: SideCertificate
    summary: Summary


def summarize(negative: Verdict, origin_feasible: bool, positive: Verdict) -> Summary:
    decided = [v is Verdict.FEASIBLE for v in (negative, positive) if v is not Verdict.UNKNOWN_AT_CAP]
    decided.append(origin_feasible)
    if len(set(decided)) > 1:
        return Summary.MIXED
    if Verdict.UNKNOWN_AT_CAP in (negative, positive):
        return Summary.UNDETERMINED
    return Summary.LOCALLY_FEASIBLE if origin_feasible else Summary.LOCALLY_INFEASIBLE


def classify_local(inst: PlpInstance, degree_cap: Optional[int] = None, **kwargs) -> LocalClassification:
    origin = lp_feasible(inst.evaluate(ZERO))
    neg = solve_side(inst, NEGATIVE, degree_cap, **kwargs)
    pos = solve_side(inst, POSITIVE, degree_cap, **kwargs)
    return LocalClassification(neg, origin, pos, summarize(neg.verdict, origin.feasible, pos.verdict))


def feasibility_at_point(inst: PlpInstance, delta) -> bool:
    return lp_feasible(inst.evaluate(delta)).feasible


# --- auditing ----------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _positive_on(p: Poly, radius: RootBound) -> bool:
    if not positive_near_zero(p):
        return False
    if radius.covers_everything():
        return count_positive_roots(p) == 0
    r = radius.value
    return count_positive_roots(p, r) == 0 and p(r) > 0 and p(r / 2) > 0


def check_certificate(inst: PlpInstance, cert: SideCertificate) -> CheckResult:
    """Re-derive a certificate's claim from the instance alone.

    Feasible certificates are checked through their solution; Infeasible
    ones through their Farkas multipliers (an Infeasible verdict without
    multipliers has nothing to audit and fails the check).
    """
    if cert.verdict is Verdict.INFEASIBLE:
        if cert.farkas is None:
            return CheckResult(False, "infeasible verdict without Farkas multipliers")
        proxy = SideCertificate(cert.side, Verdict.FEASIBLE, solution=cert.farkas, radius=cert.radius)
        res = check_certificate(farkas_instance(inst), proxy)
        return res if not res else CheckResult(True, "ok: Farkas multipliers certify infeasibility")
    if cert.verdict is not Verdict.FEASIBLE:
        return CheckResult(False, f"verdict is {cert.verdict.value}, nothing to check")
    if cert.solution is None or cert.radius is None:
        return CheckResult(False, "feasible certificate without solution or radius")
    if len(cert.solution) != inst.n:
        return CheckResult(False, f"solution has {len(cert.solution)} entries, instance has {inst.n} variables")
    if cert.radius.value <= 0:
        return CheckResult(False, "radius must be positive")
    work, xs = inst, list(cert.solution)
    if cert.side == NEGATIVE:
        work, xs = inst.reflect(), [x.reflect() for x in xs]
    elif cert.side != POSITIVE:
        return CheckResult(False, f"unknown side {cert.side!r}")
    q = common_denominator(x.den for x in xs)
    if not _positive_on(q, cert.radius):
        return CheckResult(False, "denominator is not positive on the claimed interval")
    p = [x.num * (q // x.den) for x in xs]
    for i, f in enumerate(work.slack_polys(p, q)):
        if f.is_zero():
            continue
        if not _positive_on(f, cert.radius):
            return CheckResult(False, f"constraint {i} is violated somewhere on the claimed interval")
    return CheckResult(True, "ok")
