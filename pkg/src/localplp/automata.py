"""Potential-function searches for two-input automata over {0, 1, ?}.

Patterns are strings over ``0``, ``1`` and ``?``; a pattern of length l has
index ``sum(digit(s[i]) * 3^(l-1-i))`` with ``0 -> 0``, ``1 -> 1``, ``? -> 2``.
A potential of length l is a vector indexed by patterns of that length.

The ``?`` symbol marks disagreement between two coupled runs; a potential
that never increases and drops on every occurrence of ``?s0`` forces the
density of ``?`` to zero. Non-negativity over all cyclic strings is the
absence of negative cycles in the pattern graph, which is encoded with
vertex potentials ``z``: ``z[prefix(e)] - z[suffix(e)] <= weight(e)``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    POSITIVE,
    PlpInstance,
    PolyMatrix,
    SideCertificate,
    Verdict,
    solve_side,
)
from .exact import ZERO, Poly, Rat, RatFunc, common_denominator, positive_near_zero, rat

log = logging.getLogger(__name__)

SYMBOLS = "01?"
_DIGIT = {s: i for i, s in enumerate(SYMBOLS)}


# --- patterns -------------------------------------------------------------------

def pattern_index(s: str) -> int:
    idx = 0
    for ch in s:
        try:
            idx = 3 * idx + _DIGIT[ch]
        except KeyError:
            raise ValueError(f"pattern {s!r} has a symbol outside {SYMBOLS!r}") from None
    return idx


def pattern_of(idx: int, length: int) -> str:
    if not 0 <= idx < 3**length:
        raise ValueError(f"index {idx} out of range for length {length}")
    out = []
    for _ in range(length):
        idx, r = divmod(idx, 3)
        out.append(SYMBOLS[r])
    return "".join(reversed(out))


def all_patterns(length: int) -> list[str]:
    return [pattern_of(i, length) for i in range(3**length)]


def prefix(e: int) -> int:
    """Index of the pattern ``e`` minus its last symbol."""
    return e // 3


def suffix(e: int, length: int) -> int:
    """Index of the pattern ``e`` (of ``length`` symbols) minus its first symbol."""
    return e % 3 ** (length - 1)


# --- transition tables -------------------------------------------------------------

@dataclass(frozen=True)
class TransitionTable:
    """One-step law of the coupled automaton: output symbol given the two input cells."""

    name: str
    entries: tuple[tuple[Poly, Poly, Poly], ...]

    def __post_init__(self):
        if len(self.entries) != 9 or any(len(row) != 3 for row in self.entries):
            raise ValueError("a transition table is 9 rows by 3 columns")
        for k, row in enumerate(self.entries):
            total = row[0] + row[1] + row[2]
            if total != Poly.const(1):
                raise ValueError(f"row {pattern_of(k, 2)!r} of table {self.name!r} sums to {total}, not 1")
        for x in (rat("1/1000"), rat("1/10"), rat("1/4"), rat("49/100")):
            for k, row in enumerate(self.entries):
                if any(e(x) < 0 for e in row):
                    raise ValueError(f"row {pattern_of(k, 2)!r} of table {self.name!r} is negative at p={x}")

    @classmethod
    def from_rows(cls, name: str, rows: Mapping[str, Sequence]) -> "TransitionTable":
        entries = [None] * 9
        for pat, row in rows.items():
            entries[pattern_index(pat)] = tuple(Poly(c) if isinstance(c, (list, tuple)) else c for c in row)
        if any(e is None for e in entries):
            raise ValueError("every two-symbol pattern needs a row")
        return cls(name, tuple(entries))

    def __call__(self, window: str, out: str) -> Poly:
        return self.entries[pattern_index(window)][_DIGIT[out]]


def _p(*coeffs) -> Poly:
    return Poly(coeffs)


#: Output law of a cell applying NAND to its two neighbours, then flipping with prob p.
VERTEX_NAND = TransitionTable.from_rows("vertex-nand", {
    "00": (_p(0, 1), _p(1, -1), _p()),
    "01": (_p(0, 1), _p(1, -1), _p()),
    "0?": (_p(0, 1), _p(1, -1), _p()),
    "10": (_p(0, 1), _p(1, -1), _p()),
    "11": (_p(1, -1), _p(0, 1), _p()),
    "1?": (_p(0, 1), _p(0, 1), _p(1, -2)),
    "?0": (_p(0, 1), _p(1, -1), _p()),
    "?1": (_p(0, 1), _p(0, 1), _p(1, -2)),
    "??": (_p(0, 1), _p(0, 1), _p(1, -2)),
})

#: NAND applied after each input passes through its own binary symmetric channel.
EDGE_NAND = TransitionTable.from_rows("edge-nand", {
    "00": (_p(0, 0, 1), _p(1, 0, -1), _p()),
    "01": (_p(0, 1, -1), _p(1, -1, 1), _p()),
    "0?": (_p(0, 0, 1), _p(1, -1, 1), _p(0, 1, -2)),
    "10": (_p(0, 1, -1), _p(1, -1, 1), _p()),
    "11": (_p(1, -2, 1), _p(0, 2, -1), _p()),
    "1?": (_p(0, 1, -1), _p(0, 2, -1), _p(1, -3, 2)),
    "?0": (_p(0, 0, 1), _p(1, -1, 1), _p(0, 1, -2)),
    "?1": (_p(0, 1, -1), _p(0, 2, -1), _p(1, -3, 2)),
    "??": (_p(0, 0, 1), _p(0, 2, -1), _p(1, -2)),
})

#: Implication ``a -> b`` with both inputs through binary symmetric channels.
IMP = TransitionTable.from_rows("imp", {
    "00": (_p(0, 1, -1), _p(1, -1, 1), _p()),
    "01": (_p(0, 0, 1), _p(1, 0, -1), _p()),
    "0?": (_p(0, 0, 1), _p(1, -1, 1), _p(0, 1, -2)),
    "10": (_p(1, -2, 1), _p(0, 2, -1), _p()),
    "11": (_p(0, 1, -1), _p(1, -1, 1), _p()),
    "1?": (_p(0, 1, -1), _p(0, 2, -1), _p(1, -3, 2)),
    "?0": (_p(0, 1, -1), _p(0, 2, -1), _p(1, -3, 2)),
    "?1": (_p(0, 0, 1), _p(1, -1, 1), _p(0, 1, -2)),
    "??": (_p(0, 0, 1), _p(0, 2, -1), _p(1, -2)),
})

BUILTIN_TABLES = {"vertex-nand": VERTEX_NAND, "edge-nand": EDGE_NAND, "imp": IMP}


# --- matrices ------------------------------------------------------------------------

def build_C(table: TransitionTable, ell: int) -> PolyMatrix:
    """``C[s][s'] = prod_i table((s_i, s_{i+1}), s'_i)`` for |s| = ell+1, |s'| = ell."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    rows = []
    for s in all_patterns(ell + 1):
        # build products one output symbol at a time
        partial = {"": Poly.const(1)}
        for i in range(ell):
            window = s[i: i + 2]
            nxt = {}
            for out_prefix, val in partial.items():
                for sym in SYMBOLS:
                    e = table(window, sym)
                    nxt[out_prefix + sym] = val * e if not e.is_zero() else Poly()
            partial = nxt
        rows.append([partial[t] for t in all_patterns(ell)])
    return PolyMatrix(rows, 3**ell)


def build_P(ell_from: int, ell_to: int) -> list[list[int]]:
    """0/1 matrix extending a length-``ell_from`` potential to length ``ell_to``."""
    if ell_to < ell_from or ell_from < 0:
        raise ValueError("need 0 <= ell_from <= ell_to")
    k = 3 ** (ell_to - ell_from)
    cols = 3**ell_from
    return [[1 if r // k == c else 0 for c in range(cols)] for r in range(3**ell_to)]


def extend(values: Sequence, ell_from: int, ell_to: int) -> list:
    """``P(w)`` without materialising ``P``."""
    k = 3 ** (ell_to - ell_from)
    return [values[r // k] for r in range(3**ell_to)]


def unit_pattern(pattern: str, ell_to: int) -> list[int]:
    """``P({pattern})`` at length ``ell_to``: 1 on every pattern starting with ``pattern``."""
    unit = [0] * 3 ** len(pattern)
    unit[pattern_index(pattern)] = 1
    return extend(unit, len(pattern), ell_to)


@dataclass(frozen=True)
class CycleMatrices:
    A: tuple[tuple[int, ...], ...]
    rhs_selector: tuple[tuple[int, ...], ...]


def build_cycle_matrices(ell: int) -> CycleMatrices:
    """Rows ``z[prefix(e)] - z[suffix(e)]`` over the edges ``e`` of the level-``ell`` pattern graph."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    n_v, n_e = 3**ell, 3 ** (ell + 1)
    rows = []
    for e in range(n_e):
        row = [0] * n_v
        row[prefix(e)] += 1
        row[suffix(e, ell + 1)] -= 1
        rows.append(tuple(row))
    ident = tuple(tuple(1 if i == j else 0 for j in range(n_e)) for i in range(n_e))
    return CycleMatrices(tuple(rows), ident)


# --- potentials --------------------------------------------------------------------------

@dataclass(frozen=True)
class Potential:
    """``w = sum(coeffs[s] / shared_den * {s})`` over patterns of one length."""

    length: int
    coeffs: tuple[Poly, ...]
    shared_den: Poly = field(default_factory=lambda: Poly.const(1))

    def __post_init__(self):
        if len(self.coeffs) != 3**self.length:
            raise ValueError(f"a length-{self.length} potential needs {3**self.length} coefficients")
        if not positive_near_zero(self.shared_den):
            raise ValueError("shared denominator must be positive just right of 0")

    @classmethod
    def from_patterns(cls, length: int, coeffs: Mapping[str, Poly], shared_den: Optional[Poly] = None) -> "Potential":
        vec = [Poly()] * 3**length
        for pat, c in coeffs.items():
            if len(pat) != length:
                raise ValueError(f"pattern {pat!r} does not have length {length}")
            vec[pattern_index(pat)] = c if isinstance(c, Poly) else Poly.const(c)
        return cls(length, tuple(vec), shared_den if shared_den is not None else Poly.const(1))

    def as_ratfuncs(self) -> list[RatFunc]:
        return [RatFunc(c, self.shared_den) for c in self.coeffs]

    def at(self, p) -> list[Rat]:
        den = self.shared_den(p)
        return [c(p) / den for c in self.coeffs]

    def support(self) -> dict[str, Poly]:
        return {pattern_of(i, self.length): c for i, c in enumerate(self.coeffs) if not c.is_zero()}


def cycle_value(weights: Sequence, length: int, y: str):
    """``sum_s weights[s] * #cyclic occurrences of s in y`` (windows wrap around ``y``)."""
    if not y:
        raise ValueError("cyclic string must be nonempty")
    total = None
    ext = y * (length // len(y) + 2)
    for i in range(len(y)):
        term = weights[pattern_index(ext[i: i + length])]
        total = term if total is None else total + term
    return total


def potential_cycle_value(w: Potential, y: str):
    vals = cycle_value([RatFunc(c, w.shared_den) for c in w.coeffs], w.length, y)
    return vals


# --- instance assembly ------------------------------------------------------------------

PCA = "pca"
BROADCAST = "broadcast"


def _edge_block(ell: int, z_offset: int, n_cols: int) -> list[list]:
    """For each edge, a row with ``-1`` at z[prefix] and ``+1`` at z[suffix]."""
    out = []
    for e in range(3 ** (ell + 1)):
        row = [0] * n_cols
        row[z_offset + prefix(e)] -= 1
        row[z_offset + suffix(e, ell + 1)] += 1
        out.append(row)
    return out


def _merge(int_row: list, polys: dict) -> list[Poly]:
    out = []
    for j, v in enumerate(int_row):
        p = polys.get(j, Poly())
        if v:
            p = p + Poly.const(v)
        out.append(p)
    return out


def _drift_rows(C: PolyMatrix, ell: int) -> list[dict]:
    """Per edge ``e``: the polynomial coefficients of ``P(w)_e - (C w)_e`` on the w-block."""
    out = []
    for e in range(3 ** (ell + 1)):
        row = {j: -C[e, j] for j in range(3**ell) if not C[e, j].is_zero()}
        j = prefix(e)
        row[j] = row.get(j, Poly()) + Poly.const(1)
        out.append(row)
    return out


def assemble_pca_plp(table: TransitionTable, ell: int, s0: str) -> PlpInstance:
    """Variables ``(w, z)``; one row per edge ``e`` of length ell+1:

    ``z[pre] - z[suf] <= P(w)_e - (C w)_e - P({?s0})_e``, written as ``>=``.
    """
    if any(ch not in "01" for ch in s0):
        raise ValueError("s0 may only contain 0 and 1")
    if len(s0) > ell:
        raise ValueError(f"|s0| = {len(s0)} exceeds ell = {ell}")
    nw = 3**ell
    C = build_C(table, ell)
    target = unit_pattern("?" + s0, ell + 1)
    rows, rhs = [], []
    for e, (drift, zrow) in enumerate(zip(_drift_rows(C, ell), _edge_block(ell, nw, 2 * nw))):
        rows.append(_merge(zrow, drift))
        rhs.append(Poly.const(target[e]))
    return PlpInstance(PolyMatrix(rows, 2 * nw), tuple(rhs))


def assemble_broadcast_plp(table: TransitionTable, ell: int) -> PlpInstance:
    """Variables ``(w, z, z')``: a drift block, a ``P(w) - P({?})`` block, and ``w_s = 0`` for ?-free ``s``."""
    nw = 3**ell
    n = 3 * nw
    C = build_C(table, ell)
    q_ext = unit_pattern("?", ell + 1)
    rows, rhs = [], []
    for drift, zrow in zip(_drift_rows(C, ell), _edge_block(ell, nw, n)):
        rows.append(_merge(zrow, drift))
        rhs.append(Poly())
    for e, zrow in enumerate(_edge_block(ell, 2 * nw, n)):
        rows.append(_merge(zrow, {prefix(e): Poly.const(1)}))
        rhs.append(Poly.const(q_ext[e]))
    for s in range(nw):
        if "?" in pattern_of(s, ell):
            continue
        for sign in (1, -1):
            row = [Poly()] * n
            row[s] = Poly.const(sign)
            rows.append(row)
            rhs.append(Poly())
    return PlpInstance(PolyMatrix(rows, n), tuple(rhs))


def assemble(kind: str, table: TransitionTable, ell: int, s0: Optional[str] = None) -> PlpInstance:
    if kind == PCA:
        if s0 is None:
            raise ValueError("the PCA instance needs s0")
        return assemble_pca_plp(table, ell, s0)
    if kind == BROADCAST:
        return assemble_broadcast_plp(table, ell)
    raise ValueError(f"unknown kind {kind!r}")


def substitute_potential(inst: PlpInstance, w: Potential) -> PlpInstance:
    """Fix the leading ``3^ell`` variables to ``w`` and clear its denominator.

    With ``w = N / d`` and ``d > 0`` near zero, ``A_w w + A_z z >= b`` is
    equivalent to ``A_z (d z) >= d b - A_w N``; the remaining unknowns are ``d z``.
    """
    if not positive_near_zero(w.shared_den):
        raise ValueError("shared denominator is not positive near 0")
    nw = len(w.coeffs)
    d = w.shared_den
    rows, rhs = [], []
    for i in range(inst.m):
        row = inst.A.row(i)
        r = inst.b[i] * d
        for j in range(nw):
            if not row[j].is_zero() and not w.coeffs[j].is_zero():
                r = r - row[j] * w.coeffs[j]
        rows.append(list(row[nw:]))
        rhs.append(r)
    return PlpInstance(PolyMatrix(rows, inst.n - nw), tuple(rhs))


def potential_instance(kind: str, table: TransitionTable, ell: int, s0: Optional[str], w: Potential) -> PlpInstance:
    if w.length != ell:
        raise ValueError(f"potential has length {w.length}, expected {ell}")
    return substitute_potential(assemble(kind, table, ell, s0), w)


def verify_potential(
    kind: str, table: TransitionTable, ell: int, s0: Optional[str], w: Potential, degree_cap: Optional[int] = None
) -> SideCertificate:
    """Certificate that some ``z`` (and ``z'``) exists for the fixed potential ``w`` near ``0+``."""
    inst = potential_instance(kind, table, ell, s0, w)
    return solve_side(inst, POSITIVE, degree_cap)


def edge_weights(kind: str, table: TransitionTable, ell: int, s0: Optional[str], w: Potential, p) -> list[list[Rat]]:
    """Edge-weight vectors of every cycle block at ``p`` (one block for PCA, two for broadcast)."""
    p = rat(p)
    wv = w.at(p)
    C = build_C(table, ell)
    drift = []
    for e in range(3 ** (ell + 1)):
        drift.append(wv[prefix(e)] - sum((C[e, j](p) * wv[j] for j in range(3**ell)), ZERO))
    if kind == PCA:
        target = unit_pattern("?" + s0, ell + 1)
        return [[v - t for v, t in zip(drift, target)]]
    q_ext = unit_pattern("?", ell + 1)
    return [drift, [wv[prefix(e)] - q_ext[e] for e in range(3 ** (ell + 1))]]


def negative_cycle_check(weights: Sequence, ell: int) -> bool:
    """Bellman-Ford over the level-``ell`` pattern graph; True iff no cycle has negative weight."""
    n_v = 3**ell
    if len(weights) != 3 ** (ell + 1):
        raise ValueError(f"need {3 ** (ell + 1)} edge weights")
    edges = [(prefix(e), suffix(e, ell + 1), rat(weights[e])) for e in range(len(weights))]
    dist = [ZERO] * n_v  # virtual source at distance 0 to every vertex
    for _ in range(n_v):
        changed = False
        for u, v, wt in edges:
            if dist[u] + wt < dist[v]:
                dist[v] = dist[u] + wt
                changed = True
        if not changed:
            return True
    return False


# --- search ----------------------------------------------------------------------------

def s0_candidates(ell: int, min_len: int = 1) -> list[str]:
    """All {0,1}-strings of length ``min_len..ell``, by length and then by index."""
    out = []
    for k in range(min_len, ell + 1):
        out.extend("".join(t) for t in itertools.product("01", repeat=k))
    return out


@dataclass
class SearchHit:
    kind: str
    ell: int
    s0: Optional[str]
    certificate: SideCertificate
    potential: Potential
    instance: PlpInstance


@dataclass
class SearchReport:
    hit: Optional[SearchHit]
    tried: list[tuple[int, Optional[str], str]]

    @property
    def exhausted(self) -> bool:
        return self.hit is None


def decode_potential(cert: SideCertificate, ell: int) -> Potential:
    """The w-block of a feasible certificate as a common-denominator potential."""
    xs = cert.solution[: 3**ell]
    den = common_denominator(x.den for x in xs)
    return Potential(ell, tuple(x.num * (den // x.den) for x in xs), den)


def find_potential(
    kind: str,
    table: TransitionTable,
    ells: Iterable[int],
    s0s: Optional[Mapping[int, Sequence[str]]] = None,
    degree_cap: Optional[int] = None,
) -> SearchReport:
    """First feasible ``(ell, s0)`` in ascending ell, then s0 by length and index."""
    tried = []
    for ell in ells:
        cands = [None] if kind == BROADCAST else list(s0s[ell] if s0s and ell in s0s else s0_candidates(ell))
        for s0 in cands:
            inst = assemble(kind, table, ell, s0)
            cert = solve_side(inst, POSITIVE, degree_cap)
            tried.append((ell, s0, cert.verdict.value))
            log.info("find_potential kind=%s ell=%d s0=%s verdict=%s", kind, ell, s0, cert.verdict.value)
            if cert.verdict is Verdict.FEASIBLE:
                return SearchReport(SearchHit(kind, ell, s0, cert, decode_potential(cert, ell), inst), tried)
    return SearchReport(None, tried)
