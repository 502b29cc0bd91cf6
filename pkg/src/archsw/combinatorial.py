"""Exact helper functions d, q, r, u, f, h attached to a tuple of negative
rationals, and exact checks of the identities relating them.

Every subset sum is enumerated explicitly by bitmask; there is no
inclusion-exclusion or generating-function shortcut, so each routine can be
audited term by term against its defining formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, PoleHit
from .numerics import central_derivative

MAX_LENGTH = 20


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12) if not v.is_integer() else Fraction(int(v))
    return Fraction(v)


@dataclass(frozen=True)
class NegativeTuple:
    entries: tuple[Fraction, ...] = ()

    def __post_init__(self):
        entries = tuple(to_fraction(e) for e in self.entries)
        if any(e >= 0 for e in entries):
            raise ValueError(f"all entries must be negative, got {[str(e) for e in entries]}")
        if len(entries) > MAX_LENGTH:
            raise BudgetExceeded(f"tuples longer than {MAX_LENGTH} are not enumerated")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> "NegativeTuple":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(Fraction(tok.strip()) for tok in text.split(",")))

    @property
    def m(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def append(self, a_next) -> "NegativeTuple":
        return NegativeTuple(self.entries + (to_fraction(a_next),))

    def det(self) -> Fraction:
        return math.prod(self.entries, start=Fraction(1))

    @cached_property
    def subsets(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """All (index set, product of entries) pairs, in bitmask order."""
        out = []
        for mask in range(1 << self.m):
            idx = tuple(i for i in range(self.m) if mask >> i & 1)
            out.append((idx, math.prod((self.entries[i] for i in idx), start=Fraction(1))))
        return out

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def as_tuple(a) -> NegativeTuple:
    return a if isinstance(a, NegativeTuple) else NegativeTuple(tuple(a))


def _reciprocals(a: NegativeTuple, x: Fraction) -> list[Fraction]:
    out = []
    for i, ai in enumerate(a.entries):
        if x + ai == 0:
            raise PoleHit(f"x = {x} hits the pole -a_{i + 1}")
        out.append(1 / (x + ai))
    return out


def d_m(a) -> Fraction:
    a = as_tuple(a)
    m = a.m
    return sum((math.factorial(m - len(idx)) * prod for idx, prod in a.subsets), Fraction(0))


def q_m(a, x) -> Fraction:
    a, x = as_tuple(a), to_fraction(x)
    return math.prod(_reciprocals(a, x), start=Fraction(1))


def r_m(a, x) -> Fraction:
    a, x = as_tuple(a), to_fraction(x)
    return 1 - sum(_reciprocals(a, x), Fraction(0))


def u_m(a, x) -> Fraction:
    a, x = as_tuple(a), to_fraction(x)
    m = a.m
    inv = _reciprocals(a, x)
    total = Fraction(0)
    for idx, prod in a.subsets:
        total += math.factorial(m - len(idx)) * prod * (1 - sum((inv[i] for i in idx), Fraction(0)))
    return total


def f_m(a, x) -> Fraction:
    return q_m(a, x) * u_m(a, x)


def h_polynomial(a) -> list[Fraction]:
    """Coefficients c_j (ascending powers) of the polynomial factor of h_m.

    h_m(x) = q_m(x) e^x sum_j c_j x^j, where the sum over k, t and subsets I
    with |I| = t contributes (m-1-k)! prod(a_I) to the power x^{k-t}.
    """
    a = as_tuple(a)
    m = a.m
    coeffs = [Fraction(0)] * max(m, 1)
    for k in range(m):
        for idx, prod in a.subsets:
            t = len(idx)
            if t <= k:
                coeffs[k - t] += math.factorial(m - 1 - k) * prod
    return coeffs if m else []


def _poly_eval(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def h_m(a, x, mode: str = "with_exp"):
    """h_m at x.  ``rational_factor`` returns the exact value of h_m(x) e^{-x}."""
    a = as_tuple(a)
    if mode == "rational_factor":
        x = to_fraction(x)
        if a.m == 0:
            return Fraction(0)
        return q_m(a, x) * _poly_eval(h_polynomial(a), x)
    if mode == "with_exp":
        return FloatFamily(a).h(x)
    raise ValueError(f"unknown mode {mode!r}")


def h_m_at_zero(a) -> Fraction:
    """det(a)^{-1} sum_{t<m} sum_{|I|=t} (m-1-t)! prod(a_I); zero for m = 0."""
    a = as_tuple(a)
    m = a.m
    if m == 0:
        return Fraction(0)
    total = sum((math.factorial(m - 1 - len(idx)) * prod
                 for idx, prod in a.subsets if len(idx) <= m - 1), Fraction(0))
    return total / a.det()


class FloatFamily:
    """Vectorised floating-point evaluation of f_m and h_m for quadrature.

    u_m is rewritten as d_m - sum_i w_i / (x + a_i) with w_i the sum of the
    subset weights (m - |I|)! prod(a_I) over subsets containing i.
    """

    def __init__(self, a):
        a = as_tuple(a)
        self.a = a
        m = a.m
        weights = [Fraction(0)] * m
        for idx, prod in a.subsets:
            c = math.factorial(m - len(idx)) * prod
            for i in idx:
                weights[i] += c
        self.shifts = np.array([float(e) for e in a.entries])
        self.weights = np.array([float(w) for w in weights])
        self.d = float(d_m(a))
        self.h_coeffs = [float(c) for c in h_polynomial(a)]

    def _inv(self, x):
        x = np.asarray(x, dtype=float)
        return 1.0 / (x[..., None] + self.shifts)

    def f(self, x):
        inv = self._inv(x)
        q = np.prod(inv, axis=-1)
        u = self.d - inv @ self.weights
        return q * u

    def one_minus_f_over_x(self, x):
        """(1 - f_m(x)) e^x / x, the integrand of the split representation."""
        x = np.asarray(x, dtype=float)
        return (1.0 - self.f(x)) * np.exp(x) / x

    def f_over_x(self, x):
        x = np.asarray(x, dtype=float)
        return self.f(x) * np.exp(x) / x

    def h(self, x):
        if self.a.m == 0:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        x_arr = np.asarray(x, dtype=float)
        q = np.prod(self._inv(x_arr), axis=-1)
        out = q * np.exp(x_arr) * _poly_eval(self.h_coeffs, x_arr)
        return float(out) if np.ndim(out) == 0 else out


def verify_telescoping(a, t: int, perturbation=0) -> bool:
    """Exact check that the level-t and level-(t+1) subset sums agree.

    Left:  sum_{|I|=t}   (m-t)!   prod_{j not in I}  1/a_j
    Right: sum_{|I'|=t+1} (m-t-1)! prod_{j not in I'} 1/a_j * sum_{i in I'} 1/a_i
    """
    a = as_tuple(a)
    m = a.m
    if not 0 <= t <= m - 1:
        raise ValueError(f"t must lie in [0, {m - 1}]")
    inv = [1 / e for e in a.entries]
    everyone = set(range(m))

    def complement_product(idx):
        return math.prod((inv[j] for j in everyone.difference(idx)), start=Fraction(1))

    left = Fraction(perturbation)
    right = Fraction(0)
    for idx, _ in a.subsets:
        if len(idx) == t:
            left += math.factorial(m - t) * complement_product(idx)
        elif len(idx) == t + 1:
            right += (math.factorial(m - t - 1) * complement_product(idx)
                      * sum((inv[i] for i in idx), Fraction(0)))
    return left == right


def verify_h_recursion(a, a_next, x) -> bool:
    """h_{m+1} e^{-x} = h_m e^{-x} + q_{m+1}(x) d_m, exactly.

    The e^x factor of h is divided out on both sides; as printed without it the
    recursion already fails at m = 0.
    """
    a, x = as_tuple(a), to_fraction(x)
    longer = a.append(a_next)
    lhs = h_m(longer, x, "rational_factor")
    rhs = h_m(a, x, "rational_factor") + q_m(longer, x) * d_m(a)
    return lhs == rhs


def verify_u_identity(a, a_next, x) -> bool:
    """(x + a_{m+1}) u_m(x) - u_{m+1}(x) = x r_{m+1}(x) d_m, exactly."""
    a, x = as_tuple(a), to_fraction(x)
    a_next = to_fraction(a_next)
    longer = a.append(a_next)
    lhs = (x + a_next) * u_m(a, x) - u_m(longer, x)
    rhs = x * r_m(longer, x) * d_m(a)
    return lhs == rhs


def verify_f_difference(a, a_next, x) -> bool:
    """f_m(x) - f_{m+1}(x) = x q_{m+1}(x) r_{m+1}(x) d_m, exactly."""
    a, x = as_tuple(a), to_fraction(x)
    longer = a.append(a_next)
    return f_m(a, x) - f_m(longer, x) == x * q_m(longer, x) * r_m(longer, x) * d_m(a)


def verify_antiderivative(a, x_grid: Iterable[float], step: float = 1e-4) -> float:
    """Max relative residual of d/dx h_m(x) against (1 - f_m(x)) e^x / x."""
    fam = FloatFamily(a)
    if fam.a.m == 0:
        return 0.0
    worst = 0.0
    for x in x_grid:
        x = float(x)
        lhs = central_derivative(fam.h, x, step=step)
        rhs = float(fam.one_minus_f_over_x(x))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst


def random_negative_tuple(rng, m: int, max_num: int = 9, max_den: int = 5) -> NegativeTuple:
    """Random tuple of m negative rationals -p/q with 1 <= p <= max_num, 1 <= q <= max_den."""
    return NegativeTuple(tuple(Fraction(-int(rng.integers(1, max_num + 1)),
                                        int(rng.integers(1, max_den + 1)))
                               for _ in range(m)))


def random_nonpole_rational(rng, a: Sequence[Fraction], lo: int = -6, hi: int = 6) -> Fraction:
    """Random rational avoiding every pole -a_i."""
    poles = {-e for e in as_tuple(a).entries}
    while True:
        x = Fraction(int(rng.integers(lo * 4, hi * 4 + 1)), int(rng.integers(1, 5)))
        if x not in poles:
            return x
