from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from archsw import combinatorial as comb
from archsw.errors import BudgetExceeded, PoleHit

from strategies import negative_rationals, negative_tuples, rationals

A1 = (F(-1),)
A2 = (F(-1), F(-2))


@pytest.mark.parametrize("a,expected", [((), 1), (A1, 0), (A2, 1)])
def test_d_examples(a, expected):
    assert comb.d_m(a) == expected


@pytest.mark.parametrize("fn,a,x,expected", [
    (comb.q_m, (), 5, 1), (comb.q_m, A1, 0, -1), (comb.q_m, A2, 0, F(1, 2)),
    (comb.r_m, (), 5, 1), (comb.r_m, A1, 0, 2), (comb.r_m, A2, 0, F(5, 2)),
    (comb.u_m, (), 3, 1), (comb.u_m, A1, 0, -1),
    (comb.f_m, A1, -1, F(1, 4)), (comb.f_m, (), 7, 1),
])
def test_family_examples(fn, a, x, expected):
    assert fn(a, x) == expected


def test_pole_is_reported():
    with pytest.raises(PoleHit):
        comb.u_m(A1, 1)


@pytest.mark.parametrize("a", [A1, A2, (F(-1, 2), F(-3), F(-7))])
def test_f_is_one_at_zero(a):
    assert comb.f_m(a, 0) == 1


def test_h_examples():
    assert comb.h_m((), F(3), "rational_factor") == 0
    assert comb.h_m(A1, 0, "rational_factor") == -1
    assert comb.h_m(A2, 0, "rational_factor") == -1
    assert comb.h_m_at_zero(A1) == -1 and comb.h_m_at_zero(A2) == -1
    assert comb.h_m(A2, 0.0) == pytest.approx(-1.0, abs=1e-15)


def test_telescoping_examples():
    assert comb.verify_telescoping(A2, 0)
    assert all(comb.verify_telescoping((-1, -2, -3), t) for t in range(3))
    assert not comb.verify_telescoping(A2, 0, perturbation=1)


def test_recursion_examples():
    assert comb.verify_h_recursion((), -1, 0)
    assert comb.verify_h_recursion(A1, -2, 3)
    assert comb.verify_u_identity((), -1, 2)
    assert comb.verify_u_identity(A2, -3, 5)


def test_parse_and_validation():
    assert comb.NegativeTuple.parse("-1/2, -3").entries == (F(-1, 2), F(-3))
    assert comb.NegativeTuple.parse("").m == 0
    with pytest.raises(ValueError):
        comb.NegativeTuple((F(1),))
    with pytest.raises(BudgetExceeded):
        comb.NegativeTuple(tuple([-1] * 21))


def _nonpole(a, x):
    return all(x + e != 0 for e in a)


@settings(max_examples=150, deadline=None)
@given(negative_tuples(1, 6))
def test_f_at_zero_property(a):
    assert comb.f_m(a, 0) == 1


@settings(max_examples=150, deadline=None)
@given(negative_tuples(1, 6), st.data())
def test_telescoping_property(a, data):
    t = data.draw(st.integers(0, a.m - 1))
    assert comb.verify_telescoping(a, t)


@settings(max_examples=150, deadline=None)
@given(negative_tuples(0, 6), negative_rationals, rationals)
def test_recursions_property(a, a_next, x):
    assume(_nonpole(a.append(a_next), x))
    assert comb.verify_h_recursion(a, a_next, x)
    assert comb.verify_u_identity(a, a_next, x)
    assert comb.verify_f_difference(a, a_next, x)


@settings(max_examples=60, deadline=None)
@given(negative_tuples(0, 6), rationals)
def test_float_family_matches_exact(a, x):
    assume(_nonpole(a, x))
    fam = comb.FloatFamily(a)
    assert float(fam.f(float(x))) == pytest.approx(float(comb.f_m(a, x)), rel=1e-9, abs=1e-12)
    if a.m:
        exact = float(comb.h_m(a, x, "rational_factor")) * np.exp(float(x))
        assert fam.h(float(x)) == pytest.approx(exact, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("a", [A1, A2, (-1, -2, -3)])
def test_antiderivative(a):
    assert comb.verify_antiderivative(a, (-5.0, -2.0, -0.5, -0.05), 1e-4) <= 1e-6


def test_antiderivative_empty_tuple_is_zero():
    assert comb.verify_antiderivative((), (-1.0, -0.1)) == 0.0


def test_h_at_zero_limit_of_h():
    # h_m is regular at 0 and its value there is the subset-sum formula
    a = (F(-1, 2), F(-3), F(-5, 4))
    assert comb.h_m(a, 0, "rational_factor") == comb.h_m_at_zero(a)
