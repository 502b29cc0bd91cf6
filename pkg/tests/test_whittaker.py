import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from archsw import combinatorial as comb
from archsw import special, whittaker as w
from archsw.errors import DomainError
from archsw.numerics import central_derivative

from strategies import negative_tuples

SIX_T = (0.25, 1.0, 4.0, -0.25, -1.0, -4.0)


def test_central_point_values():
    assert abs(w.w_star_n2(1.0, 0.5) - 1.0) <= 1e-9
    assert abs(w.w_star_n2(-1.0, 0.5)) <= 1e-9


def test_domain_checks():
    with pytest.raises(DomainError):
        w.w_star_n2(0.0, 1.0)
    with pytest.raises(DomainError):
        w.w_star_n2(1.0, -0.6)
    with pytest.raises(DomainError):
        w.w_star_n2(-1.0, -1.6)


def test_two_representations_agree():
    assert abs(w.w_star_n2(1.0, 1.5) - w.w_star_n2_unshifted(1.0, 1.5)) <= 1e-8


@pytest.mark.parametrize("T", SIX_T)
def test_derivative_matches_closed_form(T):
    assert abs(w.w_star_n2_deriv_at_half(T) + w.closed_form_deriv(T)) <= 1e-8


def test_closed_form_values():
    assert w.closed_form_deriv(1.0) == pytest.approx(-1 / (4 * math.pi), rel=1e-15)
    c = -4 * math.pi
    assert w.closed_form_deriv(-1.0) == pytest.approx(math.exp(c) / c - special.ei(c), rel=1e-14)
    assert w.w_star_n2_deriv_at_half(1.0) == pytest.approx(1 / (4 * math.pi), abs=1e-8)


@pytest.mark.parametrize("T", [0.5, -0.5])
def test_derivative_matches_finite_difference(T):
    fd = central_derivative(lambda s: w.w_star_n2(T, s), 0.5, step=1e-3)
    assert abs(w.w_star_n2_deriv_at_half(T) - fd) <= 1e-5


def test_two_variable_examples():
    assert w.w_star_pos_def_two_var((-1,), 1) == 2
    assert w.w_star_pos_def_two_var((-2,), 1) == F(3, 2)
    assert w.w_star_pos_def_two_var((), 5) == 1


@pytest.mark.parametrize("a1", [1.0, 2.0, 0.5])
def test_two_variable_matches_zeta_quadrature(a1):
    exact = float(w.w_star_pos_def_two_var((F(-a1),), 1))
    assert exact == pytest.approx(special.omega_1(a1, 2.0, 1.0), abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(negative_tuples(0, 6))
def test_constant_value_at_beta_zero(a):
    assert w.w_star_pos_def_two_var(a, 0) == 1


@settings(max_examples=60, deadline=None)
@given(negative_tuples(1, 6))
def test_derivative_methods_agree_with_h_at_zero(a):
    explicit = w.deriv_beta_at_zero(a, "explicit_sum")
    assert explicit == w.deriv_beta_at_zero(a, "delta_based") == comb.h_m_at_zero(a)


def test_derivative_examples():
    assert w.deriv_beta_at_zero((-1,)) == -1
    assert w.deriv_beta_at_zero((-1, -2), "delta_based") == -1
    with pytest.raises(ValueError):
        w.deriv_beta_at_zero((-1,), "bogus")


def test_split_empty_tuple_is_minus_ei():
    for b in (-0.5, -1e-3):
        assert w.split_deriv_at_zero((), b) == -special.ei(b)


def test_split_near_target():
    assert abs(w.split_deriv_at_zero((-1,), -0.01) + special.ei(-0.01) + 1) <= 0.05


@pytest.mark.parametrize("a", [(-1,), (-1, -2), (F(-1, 2), -3)])
@pytest.mark.parametrize("b", [-0.1, -1e-3])
def test_split_two_forms_agree(a, b):
    direct, err = w.split_deriv_direct(a, b)
    assert w.split_deriv_at_zero(a, b) == pytest.approx(direct, abs=1e-8 + 10 * err)


@pytest.mark.parametrize("a", [(-1,), (-1, -2), (F(-1, 2), -3)])
def test_limit_sweep(a):
    res = w.limit_sweep(a)
    assert res.target == float(comb.h_m_at_zero(a))
    assert all(r1 > r2 for r1, r2 in zip(res.residuals, res.residuals[1:]))
    assert abs(res.extrapolated_limit - res.target) <= 1e-4


def test_limit_sweep_empty_tuple():
    res = w.limit_sweep(())
    assert res.target == 0.0 and max(res.residuals) <= 1e-12


def test_limit_sweep_sorts_grid():
    res = w.limit_sweep((-1,), [-1e-3, -1e-1, -1e-2])
    assert res.b_grid == [-1e-1, -1e-2, -1e-3]


@pytest.mark.parametrize("T_flat", [1 / (4 * math.pi), 1.0])
def test_triple_crosscheck(T_flat):
    assert w.triple_crosscheck_n2(T_flat) <= 1e-4


def test_closed_form_scaling():
    assert w.closed_form_deriv(2.0) == pytest.approx(0.5 * w.closed_form_deriv(1.0), abs=1e-6)


def test_higher_signature_is_zero():
    assert w.higher_signature_limit(2) == (0.0, 0.0)
    with pytest.raises(NotImplementedError):
        w.higher_signature_limit(1)
