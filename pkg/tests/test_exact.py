from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localplp.exact import (
    NEG_INF,
    NO_POSITIVE_ROOT,
    Poly,
    RatFunc,
    count_positive_roots,
    poly_gcd,
    poly_lcm,
    rat,
    rat_str,
    smallest_positive_root_bound,
    sturm_count,
    verify_root_bound,
)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=12).map(rat)
polys = st.lists(rats, max_size=6).map(Poly)


def test_rat_parsing_and_printing():
    assert rat("6/4") == rat(3) / 2
    assert rat_str(rat("6/4")) == "3/2"
    assert rat_str(rat("-4/2")) == "-2"
    assert rat(Fraction(1, 3)) == rat("1/3")
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        rat("1/0")


def test_poly_eval_examples():
    assert Poly([2, -3, 1])(1) == 0
    assert Poly()(rat("7/3")) == 0
    assert Poly([1, rat("509/216")])(0) == 1


def test_poly_normal_form_and_zero_degree():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert Poly().is_zero()
    assert Poly().degree is NEG_INF


def test_gcd_reflect_derivative():
    assert poly_gcd(Poly([-1, 0, 1]), Poly([-1, 1])) == Poly([-1, 1])
    assert Poly([0, 1, 1]).reflect() == Poly([0, -1, 1])
    assert Poly([0, 0, 3]).derivative() == Poly([0, 6])
    assert poly_lcm(Poly([0, 1]), Poly([0, 0, 2])) == Poly([0, 0, 1])


def test_ratfunc_is_reduced_with_monic_denominator():
    x = RatFunc(Poly([0, 2]), Poly([0, 0, 4]))
    assert x.num == Poly([rat("1/2")])
    assert x.den == Poly([0, 1])
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly([1]), Poly())


@given(polys)
def test_reflect_is_an_involution(p):
    assert p.reflect().reflect() == p


@given(polys, polys)
def test_ring_operations_agree_with_evaluation(p, q):
    for x in (rat(0), rat("1/3"), rat(-2)):
        assert (p + q)(x) == p(x) + q(x)
        assert (p * q)(x) == p(x) * q(x)
        assert (p - q)(x) == p(x) - q(x)


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_division_identity(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


def test_sturm_examples():
    assert sturm_count(Poly([-2, 0, 1]), 0, 2) == 1
    assert sturm_count(Poly([1, 0, 1]), -10, 10) == 0
    cubic = Poly([0, 1]) * Poly([-1, 1]) * Poly([-2, 1])
    assert sturm_count(cubic, rat("1/2"), rat("5/2")) == 2
    with pytest.raises(ValueError, match="zero-polynomial"):
        sturm_count(Poly(), 0, 1)


def test_sturm_with_roots_on_endpoints():
    cubic = Poly([0, 1]) * Poly([-1, 1]) * Poly([-2, 1])
    assert sturm_count(cubic, 0, 2) == 1
    assert sturm_count(cubic, 0, 3) == 2


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=5),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    st.fractions(min_value=rat("1/7"), max_value=5, max_denominator=7),
)
def test_sturm_counts_distinct_linear_factors(roots, lo, width):
    p = Poly([1])
    for r in roots:
        p = p * Poly([-rat(r), 1])
    a, b = rat(lo), rat(lo) + rat(width)
    expected = len({r for r in roots if a < r < b})
    assert sturm_count(p, a, b) == expected


def test_root_bound_examples():
    r = smallest_positive_root_bound([Poly([rat("1/2"), -1])])
    assert rat("1/4") <= r.value < rat("1/2")
    assert smallest_positive_root_bound([Poly([1, 0, 1])]).witness_kind == NO_POSITIVE_ROOT
    r = smallest_positive_root_bound([Poly([2, -1]), Poly([3, -1])])
    assert 1 < r.value < 2
    with pytest.raises(ValueError, match="not positive near zero"):
        smallest_positive_root_bound([Poly([-1, 1])])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(rats, min_size=1, max_size=5), min_size=1, max_size=3))
def test_root_bound_is_sound(raw):
    ps = []
    for cs in raw:
        p = Poly(cs)
        if p.is_zero():
            continue
        lo = p.coeffs[p.low_order()]
        ps.append(p if lo > 0 else -p)
    if not ps:
        return
    r = smallest_positive_root_bound(ps)
    assert verify_root_bound(r)
    for p in ps:
        assert p(r.value) > 0 and p(r.value / 2) > 0
        if not r.covers_everything():
            assert count_positive_roots(p, r.value) == 0
