"""Exact rational linear programming.

The solver works on a dictionary (every basic variable written as an affine
function of the nonbasic ones). Decision variables are free; each ``>=`` row
gets a nonnegative slack. Free variables are pivoted into the basis first and
never leave it, which keeps the simplex part as small as the number of rows
left over after elimination. Pivoting follows Bland's rule throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .exact import ONE, ZERO, Rat, rat


class Sense(enum.Enum):
    GE = ">="
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class LinConstraint:
    coeffs: tuple
    rhs: Rat
    sense: Sense = Sense.GE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", rat(self.rhs))

    def value(self, x: Sequence) -> Rat:
        return sum((c * rat(v) for c, v in zip(self.coeffs, x)), ZERO)

    def satisfied(self, x: Sequence) -> bool:
        lhs = self.value(x)
        if self.sense is Sense.GE:
            return lhs >= self.rhs
        if self.sense is Sense.LE:
            return lhs <= self.rhs
        return lhs == self.rhs


def ge(coeffs, rhs) -> LinConstraint:
    return LinConstraint(tuple(coeffs), rhs, Sense.GE)


def le(coeffs, rhs) -> LinConstraint:
    return LinConstraint(tuple(coeffs), rhs, Sense.LE)


def eq(coeffs, rhs) -> LinConstraint:
    return LinConstraint(tuple(coeffs), rhs, Sense.EQ)


@dataclass(frozen=True)
class LinProgram:
    dim: int
    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for con in self.constraints:
            if len(con.coeffs) != self.dim:
                raise ValueError(f"constraint has {len(con.coeffs)} coefficients, program has dim {self.dim}")


class LpStatus(enum.Enum):
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    OPTIMAL = "optimal"


@dataclass
class LpOutcome:
    status: LpStatus
    witness: Optional[list] = None
    value: Optional[Rat] = None
    #: Infeasible: one multiplier per constraint proving emptiness (see check_farkas).
    farkas: Optional[list] = None
    #: Unbounded: improving direction that keeps every constraint satisfied.
    ray: Optional[list] = None
    #: Optimal: one multiplier per constraint, signed like ``farkas``; they
    #: combine the rows into ``-objective`` when maximising, ``+objective`` when minimising.
    duals: Optional[list] = None

    @property
    def feasible(self) -> bool:
        return self.status is not LpStatus.INFEASIBLE


class InfeasibleError(ValueError):
    pass


@dataclass
class LpStats:
    calls: int = 0
    pivots: int = 0

    def snapshot(self) -> tuple[int, int]:
        return self.calls, self.pivots


#: Process-wide counters; read by the search loops for logging.
STATS = LpStats()


# --- dictionary simplex -----------------------------------------------------

#: Consecutive degenerate pivots tolerated before switching to Bland's rule.
DEGENERATE_LIMIT = 50

class _Dictionary:
    """Rows ``basic = const + sum(coef * nonbasic)`` stored as sparse dicts.

    Variable ids: ``0..n-1`` free decision variables, ``n..n+m-1`` slacks of
    the ``>=`` rows, ``n+m`` the phase-one artificial.
    """

    def __init__(self, n: int, rows: Sequence[tuple[dict, Rat]]):
        self.n = n
        self.m = len(rows)
        self.art = n + self.m
        self.basis: list[int] = []
        self.const: list[Rat] = []
        self.coef: list[dict] = []
        for i, (a, b) in enumerate(rows):
            self.basis.append(n + i)
            self.const.append(-b)
            self.coef.append({j: v for j, v in a.items() if v != 0})
        self.obj: dict = {}
        self.obj_const = ZERO

    def is_free(self, var: int) -> bool:
        return var < self.n

    def pivot(self, r: int, enter: int) -> None:
        STATS.pivots += 1
        row = self.coef[r]
        a = row.pop(enter)
        leave = self.basis[r]
        inv = -1 / a
        new = {k: v * inv for k, v in row.items()}
        new[leave] = 1 / a
        new_const = self.const[r] * inv
        self.coef[r], self.const[r], self.basis[r] = new, new_const, enter
        for i, other in enumerate(self.coef):
            if i != r and enter in other:
                self._substitute(other, i, enter, new, new_const)
        if enter in self.obj:
            c = self.obj.pop(enter)
            self.obj_const += c * new_const
            self._axpy(self.obj, c, new)

    def _substitute(self, target: dict, i: int, enter: int, new: dict, new_const: Rat) -> None:
        c = target.pop(enter)
        self.const[i] += c * new_const
        self._axpy(target, c, new)

    @staticmethod
    def _axpy(target: dict, c: Rat, src: dict) -> None:
        for k, v in src.items():
            s = target.get(k, ZERO) + c * v
            if s == 0:
                target.pop(k, None)
            else:
                target[k] = s

    def eliminate_free(self) -> None:
        """Pivot free variables into the basis wherever a row mentions one."""
        for r in range(len(self.coef)):
            if self.is_free(self.basis[r]):
                continue
            free = [j for j in self.coef[r] if self.is_free(j)]
            if free:
                self.pivot(r, min(free))

    def constrained_rows(self) -> list[int]:
        return [r for r, b in enumerate(self.basis) if not self.is_free(b)]

    def run(self) -> Optional[int]:
        """Maximise ``obj``; return an unbounded entering var or None.

        Entering variable: largest objective coefficient (ties to the lowest
        id). After ``DEGENERATE_LIMIT`` consecutive degenerate pivots the
        rule drops to Bland's for the rest of the solve, which rules out
        cycling.
        """
        bland = False
        streak = 0
        while True:
            enter = None
            if bland:
                for j in sorted(self.obj):
                    if self.obj[j] > 0 and not self.is_free(j):
                        enter = j
                        break
            else:
                best = ZERO
                for j in sorted(self.obj):
                    v = self.obj[j]
                    if v > best and not self.is_free(j):
                        enter, best = j, v
            if enter is None:
                return None
            best_r, best_ratio, best_var = None, None, None
            for r, b in enumerate(self.basis):
                if self.is_free(b):
                    continue
                a = self.coef[r].get(enter)
                if a is None or a >= 0:
                    continue
                ratio = self.const[r] / -a
                if best_r is None or ratio < best_ratio or (ratio == best_ratio and b < best_var):
                    best_r, best_ratio, best_var = r, ratio, b
            if best_r is None:
                return enter
            if best_ratio == 0:
                streak += 1
                if streak >= DEGENERATE_LIMIT:
                    bland = True
            else:
                streak = 0
            self.pivot(best_r, enter)

    def phase_one(self) -> bool:
        rows = self.constrained_rows()
        worst = None
        for r in rows:
            if self.const[r] < 0 and (worst is None or self.const[r] < self.const[worst]):
                worst = r
        if worst is None:
            return True
        for r in rows:
            self.coef[r][self.art] = ONE
        self.obj, self.obj_const = {self.art: -ONE}, ZERO
        self.pivot(worst, self.art)
        self.run()
        if self.obj_const < 0:
            return False
        self._drop_artificial()
        return True

    def _drop_artificial(self) -> None:
        for r, b in enumerate(self.basis):
            if b == self.art:
                cands = [j for j in self.coef[r] if not self.is_free(j)]
                if cands:
                    self.pivot(r, min(cands))
                else:
                    del self.basis[r], self.const[r], self.coef[r]
                break
        for row in self.coef:
            row.pop(self.art, None)
        self.obj.pop(self.art, None)

    def farkas(self) -> list:
        """Multipliers ``y >= 0`` per row from the phase-one optimum."""
        y = [ZERO] * self.m
        for j, v in self.obj.items():
            if self.n <= j < self.n + self.m:
                y[j - self.n] = -v
        return y

    def set_objective(self, c: Mapping[int, Rat]) -> None:
        self.obj, self.obj_const = {}, ZERO
        where = {b: r for r, b in enumerate(self.basis)}
        for j, cj in c.items():
            if cj == 0:
                continue
            if j in where:
                r = where[j]
                self.obj_const += cj * self.const[r]
                self._axpy(self.obj, cj, self.coef[r])
            else:
                self._axpy(self.obj, cj, {j: ONE})

    def primal(self) -> list:
        x = [ZERO] * self.n
        for r, b in enumerate(self.basis):
            if self.is_free(b):
                x[b] = self.const[r]
        return x

    def direction(self, enter: int, sign: int = 1) -> list:
        d = [ZERO] * self.n
        if self.is_free(enter):
            d[enter] = rat(sign)
        for r, b in enumerate(self.basis):
            if self.is_free(b):
                d[b] = sign * self.coef[r].get(enter, ZERO)
        return d

    def duals(self) -> list:
        y = [ZERO] * self.m
        for j, v in self.obj.items():
            if self.n <= j < self.n + self.m:
                y[j - self.n] = -v
        return y


def solve_ge(n: int, rows: Sequence[tuple[dict, Rat]], objective: Optional[Mapping[int, Rat]] = None) -> LpOutcome:
    """Maximise ``objective`` over ``{x in Q^n : a.x >= b for (a, b) in rows}``.

    Rows and objective are sparse ``{index: coefficient}`` maps. Without an
    objective this is a pure feasibility check.
    """
    STATS.calls += 1
    d = _Dictionary(n, rows)
    d.eliminate_free()
    if not d.phase_one():
        return LpOutcome(LpStatus.INFEASIBLE, farkas=d.farkas())
    if not objective:
        d.obj, d.obj_const = {}, ZERO
        return LpOutcome(LpStatus.OPTIMAL, witness=d.primal(), value=ZERO, duals=[ZERO] * d.m)
    d.set_objective(objective)
    for j, v in sorted(d.obj.items()):
        if d.is_free(j) and v != 0:
            return LpOutcome(LpStatus.UNBOUNDED, witness=d.primal(), ray=d.direction(j, 1 if v > 0 else -1))
    enter = d.run()
    if enter is not None:
        return LpOutcome(LpStatus.UNBOUNDED, witness=d.primal(), ray=d.direction(enter))
    return LpOutcome(LpStatus.OPTIMAL, witness=d.primal(), value=d.obj_const, duals=d.duals())


# --- public program-level API -------------------------------------------------

def _ge_rows(prog: LinProgram) -> tuple[list, list]:
    """Rewrite every constraint as ``>=`` rows; remember (constraint, sign) per row."""
    rows, origin = [], []
    for k, con in enumerate(prog.constraints):
        a = {j: c for j, c in enumerate(con.coeffs) if c != 0}
        if con.sense in (Sense.GE, Sense.EQ):
            rows.append((a, con.rhs))
            origin.append((k, 1))
        if con.sense in (Sense.LE, Sense.EQ):
            rows.append(({j: -c for j, c in a.items()}, -con.rhs))
            origin.append((k, -1))
    return rows, origin


def _fold(values: list, origin: list, size: int) -> list:
    out = [ZERO] * size
    for v, (k, s) in zip(values, origin):
        out[k] += s * v
    return out


def _solve_program(prog: LinProgram, objective: Optional[dict]) -> LpOutcome:
    rows, origin = _ge_rows(prog)
    out = solve_ge(prog.dim, rows, objective)
    size = len(prog.constraints)
    if out.farkas is not None:
        out.farkas = _fold(out.farkas, origin, size)
    if out.duals is not None:
        out.duals = _fold(out.duals, origin, size)
    return out


def lp_feasible(prog: LinProgram) -> LpOutcome:
    return _solve_program(prog, None)


def lp_optimize(prog: LinProgram, objective: Sequence, maximize: bool = True) -> LpOutcome:
    sign = 1 if maximize else -1
    obj = {j: sign * rat(c) for j, c in enumerate(objective) if rat(c) != 0}
    if not obj:
        out = lp_feasible(prog)
        if out.status is LpStatus.OPTIMAL:
            out.value = ZERO
        return out
    out = _solve_program(prog, obj)
    if out.status is LpStatus.OPTIMAL and not maximize:
        out.value = -out.value
    return out


def check_farkas(prog: LinProgram, multipliers: Sequence) -> bool:
    """True iff ``multipliers`` prove ``prog`` empty.

    Needs ``sum(l_k a_k) = 0`` and ``sum(l_k b_k) > 0`` with ``l_k >= 0`` on
    ``>=`` rows, ``l_k <= 0`` on ``<=`` rows and any sign on equalities.
    """
    if len(multipliers) != len(prog.constraints):
        return False
    lam = [rat(v) for v in multipliers]
    combo = [ZERO] * prog.dim
    rhs = ZERO
    for l, con in zip(lam, prog.constraints):
        if con.sense is Sense.GE and l < 0:
            return False
        if con.sense is Sense.LE and l > 0:
            return False
        for j, c in enumerate(con.coeffs):
            combo[j] += l * c
        rhs += l * con.rhs
    return all(v == 0 for v in combo) and rhs > 0


def is_forced_zero(prog: LinProgram, functional: Sequence, offset) -> bool:
    """True iff ``functional . x == offset`` on every point of ``prog``."""
    offset = rat(offset)
    hi = lp_optimize(prog, functional, maximize=True)
    if hi.status is LpStatus.INFEASIBLE:
        raise ValueError("forced-zero undefined on empty set")
    if hi.status is LpStatus.UNBOUNDED or hi.value != offset:
        return False
    lo = lp_optimize(prog, functional, maximize=False)
    return lo.status is LpStatus.OPTIMAL and lo.value == offset


# --- affine subspaces ---------------------------------------------------------

class AffineSubspace:
    """``{x : a.x + a0 = 0}`` for a growing set of equations, in solved form.

    Each pivot variable is stored as an affine expression in the remaining
    (free) variables, so reducing a functional to free coordinates is a
    single substitution pass.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.solved: dict[int, tuple[dict, Rat]] = {}
        self.consistent = True

    def copy(self) -> "AffineSubspace":
        out = AffineSubspace(self.dim)
        out.solved = {p: (dict(e), c) for p, (e, c) in self.solved.items()}
        out.consistent = self.consistent
        return out

    @property
    def dimension(self) -> int:
        return self.dim - len(self.solved)

    def reduce(self, coeffs: Mapping[int, Rat], const: Rat = ZERO) -> tuple[dict, Rat]:
        out: dict = {}
        const = rat(const)
        for j, v in coeffs.items():
            if v == 0:
                continue
            hit = self.solved.get(j)
            if hit is None:
                s = out.get(j, ZERO) + v
                if s == 0:
                    out.pop(j, None)
                else:
                    out[j] = s
            else:
                expr, c0 = hit
                const += v * c0
                for k, w in expr.items():
                    s = out.get(k, ZERO) + v * w
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out, const

    def add(self, coeffs: Mapping[int, Rat], const: Rat = ZERO) -> bool:
        """Impose ``coeffs . x + const = 0``; return False if that empties the set."""
        red, c0 = self.reduce(coeffs, const)
        if not red:
            if c0 != 0:
                self.consistent = False
            return self.consistent
        p = min(red)
        a = red.pop(p)
        inv = -1 / a
        expr = {k: v * inv for k, v in red.items()}
        pc = c0 * inv
        for q, (e, k0) in list(self.solved.items()):
            if p in e:
                w = e.pop(p)
                for k, v in expr.items():
                    s = e.get(k, ZERO) + w * v
                    if s == 0:
                        e.pop(k, None)
                    else:
                        e[k] = s
                self.solved[q] = (e, k0 + w * pc)
        self.solved[p] = (expr, pc)
        return self.consistent

    def free_vars(self) -> list[int]:
        return [j for j in range(self.dim) if j not in self.solved]

    def lift(self, values: Mapping[int, Rat]) -> list:
        x = [ZERO] * self.dim
        for j in range(self.dim):
            if j not in self.solved:
                x[j] = rat(values.get(j, ZERO))
        for p, (e, c0) in self.solved.items():
            x[p] = c0 + sum((w * x[k] for k, w in e.items()), ZERO)
        return x


def max_uniform_slack(
    forms: Sequence[tuple[dict, Rat]], space: AffineSubspace
) -> tuple[Rat, Optional[list], list]:
    """Maximise ``t <= 1`` subject to ``form(x) >= t`` for every form, x in ``space``.

    Forms are ``(coeffs, const)`` meaning ``coeffs . x + const``. Returns the
    optimal ``t``, the lifted maximiser, and the dual multiplier of each form.
    """
    free = space.free_vars()
    index = {j: i for i, j in enumerate(free)}
    t = len(free)
    rows = []
    for coeffs, const in forms:
        red, c0 = space.reduce(coeffs, const)
        a = {index[j]: v for j, v in red.items()}
        a[t] = -ONE
        rows.append((a, -c0))
    rows.append(({t: -ONE}, -ONE))
    out = solve_ge(t + 1, rows, {t: ONE})
    if out.status is not LpStatus.OPTIMAL:
        raise AssertionError(f"uniform-slack LP cannot be {out.status}")
    y = out.witness
    point = space.lift({j: y[index[j]] for j in free})
    return out.value, point, out.duals[:-1]


def relative_interior_point(
    equalities: Iterable[LinConstraint], inequalities: Iterable[LinConstraint]
) -> list:
    """A point meeting every equality exactly and every inequality strictly."""
    equalities, inequalities = list(equalities), list(inequalities)
    dims = {len(c.coeffs) for c in equalities + inequalities}
    if len(dims) != 1:
        raise ValueError("constraints must share one dimension")
    (dim,) = dims
    space = AffineSubspace(dim)
    for con in equalities:
        if con.sense is not Sense.EQ:
            raise ValueError("equalities must have sense EQ")
        if not space.add(dict(enumerate(con.coeffs)), -con.rhs):
            raise InfeasibleError("equalities are inconsistent")
    forms = []
    for con in inequalities:
        a = dict(enumerate(con.coeffs))
        if con.sense is Sense.GE:
            forms.append((a, -con.rhs))
        elif con.sense is Sense.LE:
            forms.append(({j: -v for j, v in a.items()}, con.rhs))
        else:
            raise ValueError("inequalities must have sense GE or LE")
    t, point, _ = max_uniform_slack(forms, space)
    if t < 0:
        raise InfeasibleError("constraint set is empty")
    if t == 0:
        raise ValueError("an inequality is forced to equality; caller must promote to equality")
    return point
