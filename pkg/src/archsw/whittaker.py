"""Normalised Archimedean Whittaker values and their derivatives.

Two regimes are covered:

* rank one (n = 2, T a nonzero real): Shimura's one-dimensional integral
  representations, the derivative at the central point s = 1/2, and its
  closed form;
* positive definite diagonal T_flat = (-4 pi)^{-1} diag(a): the two-variable
  function W*(n, beta) through the Delta formula, its beta-derivative at 0,
  the split representation of d/ds|_{s=0} W*_T for T = (-4 pi)^{-1} diag(a, -b),
  and the b -> 0^- limit.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import combinatorial as comb
from .delta import DiagonalPositive, RationalMatrix, delta_formula
from .errors import DomainError
from .numerics import (DEFAULT_SPEC, QuadratureSpec, integrate_1d, integrate_semi_infinite)
from .special import ei, gamma, recip_gamma_series

FOUR_PI = 4.0 * math.pi
DEFAULT_B_GRID = (-1e-1, -1e-2, -1e-3, -1e-4)


def _recip_gamma(x: float) -> float:
    if abs(x) < 0.1:
        return recip_gamma_series(x)
    if x <= 0 and float(x).is_integer():
        return 0.0
    return 1.0 / gamma(x)


def _positive_integral(T, s, spec):
    """int_0^inf e^{-4 pi T u} ((u + 1)^{s+1/2} - 1) u^{s-3/2} du."""
    c, p = FOUR_PI * T, s + 0.5

    def f(u):
        return np.exp(-c * u) * np.expm1(p * np.log1p(u)) * u ** (s - 1.5)
    head = integrate_1d(f, 0.0, 1.0, spec)
    tail = integrate_semi_infinite(f, 1.0, "to_plus_inf", spec)
    return head.value + tail.value


def _negative_integral(T, s, spec):
    """int_1^inf e^{4 pi T u} (u - 1)^{s+1/2} u^{s-3/2} du."""
    c = FOUR_PI * T

    def f(u):
        return np.exp(c * u) * (u - 1.0) ** (s + 0.5) * u ** (s - 1.5)
    head = integrate_1d(f, 1.0, 2.0, spec)
    tail = integrate_semi_infinite(f, 2.0, "to_plus_inf", spec)
    return head.value + tail.value


def w_star_n2(T: float, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """W*_T(s) for n = 2 and nonzero real T."""
    if T == 0:
        raise DomainError("T must be nonzero")
    prefactor = _recip_gamma(s - 0.5)
    if T > 0:
        if not s > -0.5:
            raise DomainError("the T > 0 representation converges for s > -1/2")
        if prefactor == 0.0:
            return 1.0
        return 1.0 + prefactor * abs(FOUR_PI * T) ** (s - 0.5) * _positive_integral(T, s, spec)
    if not s > -1.5:
        raise DomainError("the T < 0 representation converges for s > -3/2")
    if prefactor == 0.0:
        return 0.0
    return prefactor * abs(FOUR_PI * T) ** (s - 0.5) * _negative_integral(T, s, spec)


def w_star_n2_unshifted(T: float, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """The T > 0 representation without the subtracted 1; needs s > 1/2."""
    if not T > 0 or not s > 0.5:
        raise DomainError("needs T > 0 and s > 1/2")
    c, p = FOUR_PI * T, s + 0.5

    def f(u):
        return np.exp(-c * u) * (u + 1.0) ** p * u ** (s - 1.5)
    head = integrate_1d(f, 0.0, 1.0, spec)
    tail = integrate_semi_infinite(f, 1.0, "to_plus_inf", spec)
    return _recip_gamma(s - 0.5) * abs(c) ** (s - 0.5) * (head.value + tail.value)


def w_star_n2_deriv_at_half(T: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """d/ds W*_T(s) at s = 1/2, by quadrature.

    1/Gamma(s - 1/2) vanishes at s = 1/2 with slope 1, so the derivative is
    just the integral factor of the representation evaluated at s = 1/2.
    """
    if T == 0:
        raise DomainError("T must be nonzero")
    if T > 0:
        return _positive_integral(T, 0.5, spec)
    return _negative_integral(T, 0.5, spec)


def closed_form_deriv(T: float) -> float:
    """Closed form of -d/ds|_{s=1/2} W*_T(s)."""
    if T == 0:
        raise DomainError("T must be nonzero")
    c = FOUR_PI * T
    if T > 0:
        return -1.0 / c
    return math.exp(c) / c - ei(c)


@dataclass(frozen=True)
class SplitMatrixInput:
    """T_flat = (-4 pi)^{-1} diag(a) and T = (-4 pi)^{-1} diag(a, -b)."""
    a: comb.NegativeTuple
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", comb.as_tuple(self.a))
        if not self.b < 0:
            raise DomainError("b must be negative")


def w_star_pos_def_two_var(a, beta) -> Fraction:
    """W*_{T_flat}(n, beta) for T_flat = (-4 pi)^{-1} diag(a), exactly.

    (-1)^m det(-a)^{-1} e^{-tr a} Delta|_{z=1}(e^{tr a z} det(z)^{-beta}); the
    exponential prefactors cancel so only the stripped Delta value remains.
    """
    a = comb.as_tuple(a)
    m = a.m
    if m == 0:
        return Fraction(1)
    beta = comb.to_fraction(beta)
    stripped = delta_formula(RationalMatrix.diagonal(a.entries),
                             DiagonalPositive((1,) * m), -beta)
    det_minus_a = math.prod((-e for e in a.entries), start=Fraction(1))
    return (-1) ** m * stripped / det_minus_a


def _poly_coefficients(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial, via Newton form."""
    n = len(xs)
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [shifted[k] - xs[i] * coeffs[k] for k in range(n)]
        coeffs[0] += dd[i]
    return coeffs


def deriv_beta_at_zero(a, method: str = "explicit_sum") -> Fraction:
    """-d/d(beta) W*_{T_flat}(n, beta) at beta = 0, exactly."""
    a = comb.as_tuple(a)
    m = a.m
    if m < 1:
        raise DomainError("needs m >= 1")
    if method == "delta_based":
        # W*(n, beta) is a polynomial of degree m in beta
        xs = [Fraction(k) for k in range(1, m + 2)]
        ys = [w_star_pos_def_two_var(a, x) for x in xs]
        return -_poly_coefficients(xs, ys)[1]
    if method == "explicit_sum":
        total = Fraction(0)
        for t in range(m):
            for idx in itertools.combinations(range(m), t):
                total += math.factorial(m - 1 - t) * math.prod(
                    (a.entries[i] for i in idx), start=Fraction(1))
        return total / a.det()
    raise ValueError(f"unknown method {method!r}")


def _split_parts(a, b, spec):
    fam = comb.FloatFamily(a)
    if fam.a.m == 0:
        return 0.0, 0.0
    res = integrate_semi_infinite(fam.one_minus_f_over_x, b, "from_minus_inf", spec)
    return res.value, res.error_estimate


def split_deriv_at_zero(a, b: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """d/ds|_{s=0} W*_T(s) for T = (-4 pi)^{-1} diag(a, -b), computed as
    -Ei(b) + int_{-inf}^{b} (1 - f_m(x)) e^x / x dx."""
    if not b < 0:
        raise DomainError("b must be negative")
    integral, _ = _split_parts(a, b, spec)
    return -ei(b) + integral


def split_deriv_direct(a, b: float, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Same quantity as -int_{-inf}^{b} f_m(x) e^x / x dx, split at x = 2b.

    Returns (value, error estimate).
    """
    if not b < 0:
        raise DomainError("b must be negative")
    fam = comb.FloatFamily(a)
    far = integrate_semi_infinite(fam.f_over_x, 2 * b, "from_minus_inf", spec)
    near = integrate_1d(fam.f_over_x, 2 * b, b, spec)
    return -(far.value + near.value), far.error_estimate + near.error_estimate


@dataclass
class LimitSweepResult:
    b_grid: list[float]
    split_derivs: list[float]
    ei_values: list[float]
    combinations: list[float]
    residuals: list[float]
    extrapolated_limit: float
    target: float
    error_estimates: list[float] = field(default_factory=list)


def extrapolate_to_zero(bs: Sequence[float], values: Sequence[float]) -> float:
    """Fit C0 + C1 b log|b| + C2 b and return C0.

    Only the three samples closest to 0 are used: the model has no b^2 term,
    and the coarsest grid point is where that curvature is largest.
    """
    order = np.argsort(np.abs(np.asarray(bs, dtype=float)))[:3]
    bs = np.asarray(bs, dtype=float)[order]
    values = np.asarray(values, dtype=float)[order]
    design = np.column_stack([np.ones_like(bs), bs * np.log(np.abs(bs)), bs])[:, :len(bs)]
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    return float(coef[0])


def limit_sweep(a, b_grid: Sequence[float] = DEFAULT_B_GRID,
                spec: QuadratureSpec = DEFAULT_SPEC) -> LimitSweepResult:
    """Evaluate d/ds|_0 W*_T + Ei(b) along b -> 0^- and extrapolate."""
    a = comb.as_tuple(a)
    grid = sorted((float(b) for b in b_grid), key=lambda b: -abs(b))
    if any(not b < 0 for b in grid):
        raise DomainError("all grid points must be negative")
    target = float(comb.h_m_at_zero(a))
    splits, eis, combos, residuals, errs = [], [], [], [], []
    for b in grid:
        integral, err = _split_parts(a, b, spec)
        e = ei(b)
        split = -e + integral
        combo = split + e
        splits.append(split)
        eis.append(e)
        combos.append(combo)
        residuals.append(abs(combo - target))
        errs.append(err)
    return LimitSweepResult(grid, splits, eis, combos, residuals,
                            extrapolate_to_zero(grid, combos), target, errs)


def triple_values_n2(T_flat: float, spec: QuadratureSpec = DEFAULT_SPEC,
                     b_grid: Sequence[float] = DEFAULT_B_GRID) -> tuple[float, float, float]:
    """Three computations of d/ds|_{s=-1/2} W*_{T_flat} for n = 2.

    (closed form at the central point, exact subset sum, extrapolated sweep)
    with a_1 = -4 pi T_flat.
    """
    if not T_flat > 0:
        raise DomainError("T_flat must be positive")
    a1 = Fraction(-FOUR_PI * T_flat)
    closed = closed_form_deriv(T_flat)
    exact = float(deriv_beta_at_zero((a1,), "explicit_sum"))
    sweep = limit_sweep((a1,), b_grid, spec).extrapolated_limit
    return closed, exact, sweep


def triple_crosscheck_n2(T_flat: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    vals = triple_values_n2(T_flat, spec)
    return max(abs(x - y) for x, y in itertools.combinations(vals, 2))


def higher_signature_limit(q: int) -> tuple[float, float]:
    """Both sides of the limit identity when T_flat has q >= 2 negative
    eigenvalues; each vanishes identically, so (0.0, 0.0) is returned."""
    if q < 2:
        raise NotImplementedError("only the positive definite branch is computed")
    return 0.0, 0.0
