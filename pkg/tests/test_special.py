import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from archsw import special
from archsw.errors import DomainError, PoleAtNonPositiveInteger
from archsw.numerics import integrate_semi_infinite


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-8, max_value=700.0))
def test_ei_against_mpmath(y):
    ref = float(mpmath.ei(-y))
    assert special.ei(-y) == pytest.approx(ref, rel=2e-12, abs=1e-300)


@pytest.mark.parametrize("y", [special.SERIES_MAX, special.ASYMPTOTIC_MIN])
def test_ei_continuous_at_regime_boundaries(y):
    for v in (y * (1 - 1e-12), y, y * (1 + 1e-12)):
        assert special.ei(-v) == pytest.approx(float(mpmath.ei(-v)), rel=1e-12)


def test_ei_vectorised_and_scalar():
    xs = np.array([-0.5, -3.0, -40.0])
    out = special.ei(xs)
    assert isinstance(out, np.ndarray)
    assert [special.ei(float(x)) for x in xs] == pytest.approx(list(out), rel=1e-15)
    assert isinstance(special.ei(-1.0), float)


def test_ei_known_value():
    assert special.ei(-1.0) == pytest.approx(-0.21938393439552027, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, 1.0])
def test_ei_rejects_non_negative(x):
    with pytest.raises(DomainError):
        special.ei(x)


@pytest.mark.parametrize("c", [0.1, 1.0, 4 * math.pi])
def test_ei_is_minus_the_exponential_tail(c):
    tail = integrate_semi_infinite(lambda t: np.exp(-t) / t, c, "to_plus_inf").value
    assert abs(special.ei(-c) + tail) <= 1e-10


@pytest.mark.parametrize("b", [-1e-3, -1e-5, -1e-8])
def test_ei_small_argument_bound(b):
    assert abs(special.ei(b) - math.log(abs(b)) - special.EULER_GAMMA) <= 2 * abs(b)


def test_gamma_m():
    assert special.gamma_m(0, 0.3) == 1.0
    assert special.gamma_m(1, 5.0) == pytest.approx(24.0)
    assert special.gamma_m(2, 3.0) == pytest.approx(math.pi * 2.0 * 1.0)
    with pytest.raises(PoleAtNonPositiveInteger) as info:
        special.gamma_m(3, 2.0)
    assert info.value.factor == 2


def test_gamma_pole():
    with pytest.raises(PoleAtNonPositiveInteger):
        special.gamma(-3.0)


@pytest.mark.parametrize("eps", [1e-9, -1e-6, 0.05])
def test_recip_gamma_series(eps):
    assert special.recip_gamma_series(eps) == pytest.approx(float(mpmath.rgamma(eps)), rel=1e-13)


@pytest.mark.parametrize("z,alpha,beta", [(1.0, 2.0, 1.0), (0.7, 1.3, 0.4), (2.5, 0.5, 2.2)])
def test_zeta_1_against_mpmath(z, alpha, beta):
    with mpmath.workdps(30):
        ref = mpmath.quad(lambda x: mpmath.e ** (-z * x) * (x + 1) ** (alpha - 1) * x ** (beta - 1),
                          [0, 1, mpmath.inf])
    assert special.zeta_1(z, alpha, beta) == pytest.approx(float(ref), rel=1e-10)


def test_omega_1_elementary_values():
    assert special.omega_1(1.0, 2.0, 1.0) == pytest.approx(2.0, abs=1e-10)
    assert special.omega_1(2.0, 2.0, 1.0) == pytest.approx(1.5, abs=1e-10)


def test_omega_1_tends_to_one_as_beta_vanishes():
    assert special.omega_1(1.3, 1.7, 1e-6) == pytest.approx(1.0, abs=1e-5)


def test_alpha_derivative_vanishes_at_beta_zero():
    assert abs(special.alpha_derivative_probe(1.0)) < 1e-6
    # and is visibly nonzero away from beta = 0
    assert abs(special.alpha_derivative_probe(1.0, beta0=0.5)) > 1e-2


def test_zeta_domain():
    with pytest.raises(DomainError):
        special.zeta_1(-1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        special.zeta_1(1.0, 1.0, 0.0)
