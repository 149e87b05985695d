from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localplp.lp import (
    AffineSubspace,
    InfeasibleError,
    LinProgram,
    LpStatus,
    check_farkas,
    eq,
    ge,
    is_forced_zero,
    le,
    lp_feasible,
    lp_optimize,
    relative_interior_point,
)


def fm_feasible(rows: list[tuple[list[Fraction], Fraction]], dim: int) -> bool:
    """Fourier-Motzkin oracle for ``{x : a.x >= b}`` over Fractions."""
    for k in range(dim):
        pos, neg, rest = [], [], []
        for a, b in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b))
        for (ap, bp), (an, bn) in itertools.product(pos, neg):
            s, t = -an[k], ap[k]
            rest.append(([s * x + t * y for x, y in zip(ap, an)], s * bp + t * bn))
        rows = rest
    return all(b <= 0 for _, b in rows)


def as_ge_rows(prog: LinProgram):
    out = []
    for con in prog.constraints:
        a = [Fraction(int(c.numerator), int(c.denominator)) for c in con.coeffs]
        b = Fraction(int(con.rhs.numerator), int(con.rhs.denominator))
        if con.sense.value in (">=", "="):
            out.append((a, b))
        if con.sense.value in ("<=", "="):
            out.append(([-x for x in a], -b))
    return out


coef = st.integers(-3, 3)


@st.composite
def programs(draw):
    dim = draw(st.integers(1, 3))
    m = draw(st.integers(0, 5))
    cons = []
    for _ in range(m):
        a = draw(st.lists(coef, min_size=dim, max_size=dim))
        b = draw(coef)
        cons.append(draw(st.sampled_from([ge, le, eq]))(a, b))
    return LinProgram(dim, cons)


@settings(max_examples=300, deadline=None)
@given(programs())
def test_feasibility_matches_fourier_motzkin(prog):
    out = lp_feasible(prog)
    assert out.feasible == fm_feasible(as_ge_rows(prog), prog.dim)
    if out.feasible:
        assert all(c.satisfied(out.witness) for c in prog.constraints)
    else:
        assert check_farkas(prog, out.farkas)


@settings(max_examples=200, deadline=None)
@given(programs(), st.lists(coef, min_size=3, max_size=3), st.booleans())
def test_optimum_is_feasible_and_not_beaten(prog, obj, maximize):
    obj = obj[: prog.dim]
    out = lp_optimize(prog, obj, maximize)
    if out.status is LpStatus.OPTIMAL:
        assert all(c.satisfied(out.witness) for c in prog.constraints)
        assert sum(c * x for c, x in zip(obj, out.witness)) == out.value
        # no feasible point does better: add the strict improvement as a cut
        better = (ge if maximize else le)(obj, out.value + (1 if maximize else -1) * Fraction(1, 10**6))
        assert not fm_feasible(as_ge_rows(LinProgram(prog.dim, prog.constraints + (better,))), prog.dim)
    elif out.status is LpStatus.UNBOUNDED:
        assert all(c.satisfied(out.witness) for c in prog.constraints)
        assert out.ray is not None


def test_feasibility_examples():
    assert lp_feasible(LinProgram(1, [ge([1], 1), le([1], 0)])).status is LpStatus.INFEASIBLE
    out = lp_feasible(LinProgram(1, [ge([1], 0), ge([-1], -1)]))
    assert 0 <= out.witness[0] <= 1
    assert lp_feasible(LinProgram(2, [])).feasible


def test_optimize_examples():
    assert lp_optimize(LinProgram(1, [le([1], 3)]), [1]).value == 3
    assert lp_optimize(LinProgram(1, []), [1]).status is LpStatus.UNBOUNDED
    out = lp_optimize(LinProgram(2, [ge([1, 0], 1), ge([0, 1], 2)]), [1, 1], maximize=False)
    assert out.status is LpStatus.OPTIMAL and out.value == 3


def test_duals_certify_the_optimum():
    prog = LinProgram(2, [le([1, 1], 4), le([1, 0], 3), ge([0, 1], 0), ge([1, 0], 0)])
    out = lp_optimize(prog, [2, 1])
    assert out.value == 7
    combo = [sum(y * c.coeffs[j] for y, c in zip(out.duals, prog.constraints)) for j in range(2)]
    assert combo == [-2, -1]


def test_determinism():
    prog = LinProgram(3, [ge([1, 1, 1], 1), le([1, -1, 0], 2), eq([0, 1, 1], 1)])
    assert lp_feasible(prog).witness == lp_feasible(prog).witness


def test_forced_zero_examples():
    assert is_forced_zero(LinProgram(1, [ge([1], 0), ge([-1], 0)]), [1], 0)
    assert not is_forced_zero(LinProgram(1, [ge([1], 0)]), [1], 0)
    simplex = LinProgram(2, [ge([1, 1], 1), ge([-1, -1], -1), ge([1, 0], 0), ge([0, 1], 0)])
    assert is_forced_zero(simplex, [1, 1], 1)
    with pytest.raises(ValueError, match="empty set"):
        is_forced_zero(LinProgram(1, [ge([1], 1), le([1], 0)]), [1], 0)


def test_relative_interior_examples():
    pt = relative_interior_point([eq([1, 0], 0)], [ge([0, 1], 0), ge([0, -1], -1)])
    assert pt[0] == 0 and 0 < pt[1] < 1
    assert relative_interior_point([], [ge([1], 0)])[0] > 0
    assert relative_interior_point([eq([1], 1)], []) == [1]
    with pytest.raises(InfeasibleError):
        relative_interior_point([], [ge([1], 1), le([1], 0)])
    with pytest.raises(ValueError, match="promote"):
        relative_interior_point([], [ge([1], 0), le([1], 0)])


@settings(max_examples=100, deadline=None)
@given(programs())
def test_relative_interior_is_strict(prog):
    ineqs = [c for c in prog.constraints if c.sense.value != "="]
    eqs = [c for c in prog.constraints if c.sense.value == "="]
    try:
        pt = relative_interior_point(eqs, ineqs)
    except (InfeasibleError, ValueError):
        return
    assert all(c.value(pt) == c.rhs for c in eqs)
    for c in ineqs:
        assert c.value(pt) > c.rhs if c.sense.value == ">=" else c.value(pt) < c.rhs


def test_affine_subspace_solved_form():
    space = AffineSubspace(3)
    assert space.add({0: 1, 1: 1}, -2)
    assert space.add({1: 1, 2: -1}, 0)
    assert space.dimension == 1
    x = space.lift({2: 5})
    assert x[0] + x[1] == 2 and x[1] == x[2]
    assert not space.add({0: 1, 1: 1}, 0)
