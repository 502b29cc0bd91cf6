"""Scalar special functions: gamma, the Hermitian gamma factor, Ei, and the
one-dimensional Shimura integrals zeta_1 / omega_1."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleAtNonPositiveInteger
from .numerics import (DEFAULT_SPEC, QuadratureSpec, central_derivative, integrate_1d,
                       integrate_semi_infinite)

EULER_GAMMA = 0.57721566490153286060651209008240243


@dataclass(frozen=True)
class EulerConstants:
    euler_gamma: float = EULER_GAMMA
    gamma_prime_at_one: float = -EULER_GAMMA


EULER = EulerConstants()

# Regime boundaries for ei, in |x|.
SERIES_MAX = 2.0
ASYMPTOTIC_MIN = 30.0
_SERIES_TERMS = 40
_CF_ITERATIONS = 80


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    if _is_pole(x):
        raise PoleAtNonPositiveInteger(f"gamma has a pole at {x!r}")
    return math.gamma(x)


def gamma_m(m: int, s: float) -> float:
    """pi^{m(m-1)/2} * prod_{k<m} gamma(s - k); equals 1 for m = 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    out = math.pi ** (m * (m - 1) / 2)
    for k in range(m):
        if _is_pole(s - k):
            raise PoleAtNonPositiveInteger(
                f"gamma_m({m}, {s!r}): factor gamma(s - {k}) has a pole", factor=k)
        out *= math.gamma(s - k)
    return out


def _ei_series(x):
    # gamma + log|x| + sum_{k>=1} x^k / (k k!)
    total = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, _SERIES_TERMS + 1):
        term = term * x / k
        total = total + term / k
    return EULER_GAMMA + np.log(np.abs(x)) + total


def _e1_continued_fraction(y):
    # Modified Lentz evaluation of E1(y) = e^{-y} / (y + 1 - 1/(y + 3 - 4/(y + 5 - ...)))
    tiny = 1e-300
    b = y + 1.0
    c = np.full_like(y, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _CF_ITERATIONS + 1):
        an = -float(i * i)
        b = b + 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        h = h * (c * d)
    return h * np.exp(-y)


def _ei_asymptotic(x):
    # e^x / x * sum_k k! / x^k, truncated before the terms start to grow
    total = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        nxt = term * k / x
        grow = np.abs(nxt) >= np.abs(term)
        term = np.where(grow, 0.0, nxt)
        total = total + term
    with np.errstate(under="ignore"):
        return np.exp(x) / x * total


def ei(x):
    """Exponential integral Ei(x) for x < 0 (scalar or array).

    Ei(x) = -int_{-x}^inf e^{-t}/t dt.  Uses the power series near 0, a
    continued fraction for moderate |x| and the asymptotic series beyond 30.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr < 0)):
        raise DomainError("ei is implemented for negative arguments only")
    y = -arr
    out = np.empty_like(arr)
    small = y <= SERIES_MAX
    large = y > ASYMPTOTIC_MIN
    mid = ~small & ~large
    if np.any(small):
        out[small] = _ei_series(arr[small])
    if np.any(mid):
        out[mid] = -_e1_continued_fraction(y[mid])
    if np.any(large):
        out[large] = _ei_asymptotic(arr[large])
    return float(out) if out.ndim == 0 else out


def recip_gamma_series(eps: float) -> float:
    """1/Gamma(eps) near the pole at 0, via eps / Gamma(1 + eps)."""
    return eps / math.gamma(1.0 + eps)


def _check_zeta_args(z, beta):
    if not z > 0:
        raise DomainError("zeta_1 needs z > 0")
    if not beta > 0:
        raise DomainError("zeta_1 needs beta > 0 for convergence at 0")


def _scaled_zeta_1(z, alpha, beta, spec):
    """beta * zeta_1(z; alpha, beta), computed without the 1/beta blow-up."""
    if beta < 1:
        # t = x^beta removes the x^{beta-1} singularity on (0, 1)
        p = 1.0 / beta

        def near(t):
            x = t ** p
            return np.exp(-z * x) * (x + 1.0) ** (alpha - 1.0)
        head = integrate_1d(near, 0.0, 1.0, spec)
        head_value, head_err = head.value, head.error_estimate
    else:
        def near(x):
            return np.exp(-z * x) * (x + 1.0) ** (alpha - 1.0) * x ** (beta - 1.0)
        head = integrate_1d(near, 0.0, 1.0, spec)
        head_value, head_err = beta * head.value, beta * head.error_estimate

    def far(x):
        return np.exp(-z * x) * (x + 1.0) ** (alpha - 1.0) * x ** (beta - 1.0)
    tail = integrate_semi_infinite(far, 1.0, "to_plus_inf", spec)
    return head_value + beta * tail.value, head_err + beta * tail.error_estimate


def zeta_1(z: float, alpha: float, beta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int_0^inf e^{-z x} (x + 1)^{alpha - 1} x^{beta - 1} dx."""
    _check_zeta_args(z, beta)
    scaled, _ = _scaled_zeta_1(z, alpha, beta, spec)
    return scaled / beta


def omega_1(z: float, alpha: float, beta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Gamma(beta)^{-1} z^beta zeta_1(z; alpha, beta)."""
    _check_zeta_args(z, beta)
    scaled, _ = _scaled_zeta_1(z, alpha, beta, spec)
    # Gamma(beta) * beta = Gamma(beta + 1) keeps small beta well conditioned
    return z ** beta * scaled / math.gamma(beta + 1.0)


PROBE_BETAS = (1e-3, 2e-3, 4e-3)


def alpha_derivative_probe(z: float, beta0: float = 0.0, spec: QuadratureSpec = DEFAULT_SPEC,
                           alpha: float = 1.0, step: float = 1e-3) -> float:
    """Numerical d/d(alpha) of omega_1(z; alpha, beta) at beta = beta0.

    For beta0 = 0 the derivative is sampled at beta in ``PROBE_BETAS`` and
    extrapolated quadratically to beta = 0, since omega_1 is only evaluated
    by quadrature for beta > 0.
    """
    if not z > 0:
        raise DomainError("probe needs z > 0")

    def deriv_at(beta):
        return central_derivative(lambda al: omega_1(z, al, beta, spec), alpha, step=step)

    if beta0 > 0:
        return deriv_at(beta0)
    if beta0 < 0:
        raise DomainError("beta0 must be >= 0")
    b1, b2, b3 = PROBE_BETAS
    d1, d2, d3 = (deriv_at(b) for b in PROBE_BETAS)
    # Lagrange interpolation evaluated at beta = 0
    return (d1 * b2 * b3 / ((b1 - b2) * (b1 - b3))
            + d2 * b1 * b3 / ((b2 - b1) * (b2 - b3))
            + d3 * b1 * b2 / ((b3 - b1) * (b3 - b2)))
