from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_no_negative_cycle
from localplp import automata as am
from localplp.automata import (
    BROADCAST,
    EDGE_NAND,
    IMP,
    PCA,
    VERTEX_NAND,
    Potential,
    TransitionTable,
    all_patterns,
    assemble_broadcast_plp,
    assemble_pca_plp,
    build_C,
    build_cycle_matrices,
    build_P,
    cycle_value,
    extend,
    negative_cycle_check,
    pattern_index,
    pattern_of,
    prefix,
    s0_candidates,
    substitute_potential,
    suffix,
)
from localplp.core import Verdict, feasibility_at_point
from localplp.exact import Poly, rat
from localplp.lp import LinProgram, ge, lp_feasible

TABLES = [VERTEX_NAND, EDGE_NAND, IMP]


# --- patterns ---------------------------------------------------------------------

def test_pattern_index_is_base_three_msb_first():
    assert pattern_index("0") == 0 and pattern_index("?") == 2
    assert pattern_index("10") == 3
    assert pattern_index("?01") == 19
    assert all(pattern_index(pattern_of(i, 3)) == i for i in range(27))
    with pytest.raises(ValueError):
        pattern_index("2")


def test_prefix_and_suffix():
    e = pattern_index("01?1")
    assert pattern_of(prefix(e), 3) == "01?"
    assert pattern_of(suffix(e, 4), 3) == "1?1"


# --- tables and C -----------------------------------------------------------------------

def test_table_entries_match_the_published_tables():
    p = Poly([0, 1])
    assert VERTEX_NAND("11", "0") == 1 - p
    assert EDGE_NAND("00", "0") == p * p
    assert IMP("10", "0") == Poly([1, -2, 1])


def test_table_validation():
    rows = {pat: (Poly([1]), Poly(), Poly()) for pat in all_patterns(2)}
    TransitionTable.from_rows("ok", rows)
    rows["00"] = (Poly([1]), Poly([1]), Poly())
    with pytest.raises(ValueError, match="sums to"):
        TransitionTable.from_rows("bad", rows)


@pytest.mark.parametrize("table", TABLES, ids=lambda t: t.name)
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_C_is_row_stochastic(table, ell):
    C = build_C(table, ell)
    assert (C.rows, C.cols) == (3 ** (ell + 1), 3**ell)
    for i in range(C.rows):
        total = Poly()
        for j in range(C.cols):
            total = total + C[i, j]
        assert total == Poly([1])


def test_C_product_formula_example():
    p = Poly([0, 1])
    C = build_C(VERTEX_NAND, 2)
    assert C[pattern_index("111"), pattern_index("00")] == (1 - p) * (1 - p)


# --- P and cycle matrices --------------------------------------------------------------------

def test_P_examples():
    P = build_P(1, 2)
    col0 = [pattern_of(r, 2) for r in range(9) if P[r][0]]
    assert col0 == ["00", "01", "0?"]
    assert build_P(2, 2) == [[int(i == j) for j in range(9)] for i in range(9)]
    P = build_P(1, 3)
    assert all(sum(P[r][c] for r in range(27)) == 9 for c in range(3))
    assert all(sum(row) == 1 for row in P)


def test_cycle_matrices():
    cm = build_cycle_matrices(1)
    assert len(cm.A) == 9 and len(cm.A[0]) == 3
    e = pattern_index("01")
    assert cm.A[e][0] == 1 and cm.A[e][1] == -1
    assert all(v == 0 for v in cm.A[pattern_index("00")])
    for ell in (1, 2):
        A = build_cycle_matrices(ell).A
        assert all(sum(row[j] for row in A) == 0 for j in range(3**ell))


# --- cycle values -------------------------------------------------------------------------------

def test_cycle_value_examples():
    def unit(pat):
        vec = [0] * 3 ** len(pat)
        vec[pattern_index(pat)] = 1
        return vec

    assert cycle_value(unit("01"), 2, "0101") == 2
    assert cycle_value(unit("?"), 1, "0?1") == 1
    assert cycle_value(unit("00"), 2, "0") == 1


cyclic = st.text(alphabet="01?", min_size=1, max_size=6)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.data())
def test_extension_preserves_cycle_values(ell, data):
    w = data.draw(st.lists(st.integers(-5, 5), min_size=3**ell, max_size=3**ell))
    y = data.draw(cyclic)
    assert cycle_value(extend(w, ell, ell + 1), ell + 1, y) == cycle_value(w, ell, y)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.data())
def test_transfer_identity_on_shift_distributions(ell, data):
    # averaging (C w) over the uniform shift-distribution of y equals its cyclic value over |y|
    table = data.draw(st.sampled_from(TABLES))
    y = data.draw(cyclic)
    p = rat("1/7")
    w = data.draw(st.lists(st.integers(-4, 4), min_size=3**ell, max_size=3**ell))
    C = build_C(table, ell)
    cw = [sum(C[e, j](p) * w[j] for j in range(3**ell)) for e in range(3 ** (ell + 1))]
    ext = y * (ell + 2)
    mu = [0] * 3 ** (ell + 1)
    for i in range(len(y)):
        mu[pattern_index(ext[i: i + ell + 1])] += rat(1) / len(y)
    assert sum(c * m for c, m in zip(cw, mu)) == cycle_value(cw, ell + 1, y) / len(y)


# --- cycle LP vs Bellman-Ford vs enumeration --------------------------------------------------------

def cycle_lp_feasible(weights, ell) -> bool:
    cons = []
    for e, row in enumerate(build_cycle_matrices(ell).A):
        # z_pre - z_suf <= w_e  as  -row.z >= -w_e
        cons.append(ge([-v for v in row], -weights[e]))
    return lp_feasible(LinProgram(3**ell, cons)).feasible


def three_way(weights, ell):
    edges = [(prefix(e), suffix(e, ell + 1), weights[e]) for e in range(len(weights))]
    return cycle_lp_feasible(weights, ell), negative_cycle_check(weights, ell), brute_no_negative_cycle(3**ell, edges)


def test_negative_cycle_examples():
    assert negative_cycle_check([1] * 9, 1)
    w = [0] * 9
    w[pattern_index("00")] = -1
    assert not negative_cycle_check(w, 1)


@pytest.mark.parametrize("ell", [1, 2])
def test_cycle_lp_bellman_ford_and_enumeration_agree(ell):
    rng = random.Random(100 + ell)
    for _ in range(25):
        weights = [rat(rng.randint(-2, 6)) / rng.randint(1, 4) for _ in range(3 ** (ell + 1))]
        a, b, c = three_way(weights, ell)
        assert a == b == c


# --- assembly ---------------------------------------------------------------------------------------

def test_pca_instance_shapes():
    inst = assemble_pca_plp(VERTEX_NAND, 3, "01")
    assert (inst.m, inst.n, inst.max_degree) == (81, 54, 3)
    inst = assemble_pca_plp(EDGE_NAND, 3, "10")
    assert (inst.m, inst.n, inst.max_degree) == (81, 54, 6)
    with pytest.raises(ValueError):
        assemble_pca_plp(VERTEX_NAND, 2, "010")
    with pytest.raises(ValueError):
        assemble_pca_plp(VERTEX_NAND, 2, "0?")


def test_self_loop_rows_have_no_z():
    inst = assemble_pca_plp(VERTEX_NAND, 2, "0")
    e = pattern_index("000")
    assert all(inst.A[e, 9 + j].is_zero() for j in range(9))


def test_broadcast_instance_pins_question_free_patterns():
    inst = assemble_broadcast_plp(EDGE_NAND, 2)
    assert inst.n == 27
    assert inst.m == 27 + 27 + 2 * 4
    pins = [i for i in range(54, inst.m) if not inst.A[i, pattern_index("00")].is_zero()]
    assert len(pins) == 2


def test_zero_potential_fails_pca():
    w = Potential(2, tuple(Poly() for _ in range(9)))
    cert = am.verify_potential(PCA, VERTEX_NAND, 2, "0", w)
    assert cert.verdict is Verdict.INFEASIBLE
    inst = am.potential_instance(PCA, VERTEX_NAND, 2, "0", w)
    assert not feasibility_at_point(inst, rat("1/100"))


def test_substitution_clears_the_denominator():
    inst = assemble_pca_plp(VERTEX_NAND, 1, "0")
    w = Potential(1, (Poly([1]), Poly([2]), Poly([3])), Poly([2, 1]))
    sub = substitute_potential(inst, w)
    assert sub.n == 3
    p = rat("1/5")
    z = [rat(1), rat(2), rat(-1)]
    full = inst.evaluate(p)
    wz = w.at(p) + z
    scaled = sub.evaluate(p)
    dz = [w.shared_den(p) * v for v in z]
    for a, b in zip(full.constraints, scaled.constraints):
        assert a.satisfied(wz) == b.satisfied(dz)


def test_potential_validation():
    with pytest.raises(ValueError):
        Potential(1, (Poly(),) * 2)
    with pytest.raises(ValueError):
        Potential(1, (Poly(),) * 3, Poly([-1]))


def test_s0_candidates_order():
    assert s0_candidates(2) == ["0", "1", "00", "01", "10", "11"]


def test_small_search_reports_each_candidate():
    rep = am.find_potential(PCA, VERTEX_NAND, [1], degree_cap=0)
    assert [t[:2] for t in rep.tried] == [(1, "0"), (1, "1")]
    assert rep.hit is None
