"""The determinant differential operator det(d/dz_{jk}) applied to
exp(tr(u z)) det(z)^s: closed combinatorial formula, brute-force symbolic
oracle, and the tuple count behind the formula.

Index sets are 0-based throughout.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded, IndexOutOfRange
from .combinatorial import to_fraction

MAX_ORACLE_DIM = 3
MAX_ORACLE_POWER = 6


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(v) for v in row) for row in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, jk):
        j, k = jk
        return self.entries[j][k]

    @classmethod
    def identity(cls, m: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)))

    @classmethod
    def zeros(cls, m: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(m)))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "RationalMatrix":
        m = len(diag)
        return cls(tuple(tuple(to_fraction(diag[i]) if i == j else Fraction(0)
                               for j in range(m)) for i in range(m)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Fraction]]:
        return [[self.entries[r][c] for c in cols] for r in rows]


@dataclass(frozen=True)
class DiagonalPositive:
    diag: tuple[Fraction, ...]

    def __post_init__(self):
        diag = tuple(to_fraction(v) for v in self.diag)
        if not diag or any(v <= 0 for v in diag):
            raise ValueError("diagonal entries must be strictly positive")
        object.__setattr__(self, "diag", diag)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix.diagonal(self.diag)


def determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination; 1 for 0x0."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            factor = a[r][col] / p
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def _check_indices(u: RationalMatrix, I, J):
    I, J = sorted(set(I)), sorted(set(J))
    if len(I) != len(J):
        raise ValueError("index sets must have equal size")
    for idx in I + J:
        if not 0 <= idx < u.dim:
            raise IndexOutOfRange(f"index {idx} outside 0..{u.dim - 1}")
    return I, J


def minor_keep(u: RationalMatrix, I: Iterable[int], J: Iterable[int]) -> Fraction:
    """Determinant of u restricted to rows I and columns J."""
    I, J = _check_indices(u, I, J)
    return determinant(u.submatrix(I, J))


def minor_drop(u: RationalMatrix, I: Iterable[int], J: Iterable[int]) -> Fraction:
    """Determinant of u with rows I and columns J removed."""
    I, J = _check_indices(u, I, J)
    rows = [r for r in range(u.dim) if r not in I]
    cols = [c for c in range(u.dim) if c not in J]
    return determinant(u.submatrix(rows, cols))


def rising(s, t: int):
    """prod_{k=1}^t (s + k - 1)."""
    out = Fraction(1) if isinstance(s, Fraction) else 1
    for k in range(1, t + 1):
        out *= s + k - 1
    return out


def delta_formula(u: RationalMatrix, z0: DiagonalPositive, s) -> Fraction:
    """Prefactor-stripped value of det(d/dz)(e^{tr uz} det(z)^s) at z = z0.

    sum over subsets J of (s)_|J| * |z0 kept on J|^{-1} * |u with J dropped|.
    """
    s = to_fraction(s)
    m = u.dim
    if z0.dim != m:
        raise ValueError("u and z0 must have the same size")
    zmat = z0.matrix()
    total = Fraction(0)
    for t in range(m + 1):
        coeff = rising(s, t)
        for J in itertools.combinations(range(m), t):
            total += coeff / minor_keep(zmat, J, J) * minor_drop(u, J, J)
    return total


def _permutations_with_sign(m):
    for perm in itertools.permutations(range(m)):
        inversions = sum(1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j])
        yield perm, -1 if inversions % 2 else 1


class ExpPolynomial:
    """P(z) * exp(tr(u z)) with P a polynomial in the m^2 entries z_{jk}.

    Monomials are keyed by exponent tuples in row-major order.
    """

    def __init__(self, u: RationalMatrix, terms=None):
        self.u = u
        self.m = u.dim
        self.terms: dict[tuple[int, ...], Fraction] = dict(terms or {})

    @classmethod
    def det_power(cls, u: RationalMatrix, s: int) -> "ExpPolynomial":
        m = u.dim
        det_terms = {}
        for perm, sign in _permutations_with_sign(m):
            exps = [0] * (m * m)
            for j in range(m):
                exps[j * m + perm[j]] += 1
            det_terms[tuple(exps)] = det_terms.get(tuple(exps), 0) + Fraction(sign)
        poly = {tuple([0] * (m * m)): Fraction(1)}
        for _ in range(s):
            poly = _poly_mul(poly, det_terms)
        return cls(u, poly)

    def derivative(self, j: int, k: int) -> "ExpPolynomial":
        """d/dz_{jk}; the exponential contributes u_{kj} since tr(uz) = sum u_ab z_ba."""
        var = j * self.m + k
        coeff_exp = self.u[k, j]
        out = defaultdict(Fraction)
        for exps, c in self.terms.items():
            if exps[var]:
                lowered = list(exps)
                lowered[var] -= 1
                out[tuple(lowered)] += c * exps[var]
            if coeff_exp:
                out[exps] += c * coeff_exp
        return ExpPolynomial(self.u, {e: c for e, c in out.items() if c})

    def __add__(self, other):
        out = defaultdict(Fraction, self.terms)
        for e, c in other.terms.items():
            out[e] += c
        return ExpPolynomial(self.u, {e: c for e, c in out.items() if c})

    def scale(self, factor):
        return ExpPolynomial(self.u, {e: c * factor for e, c in self.terms.items()})

    def polynomial_at_diagonal(self, diag: Sequence[Fraction]) -> Fraction:
        """Value of P (without the exponential) at z = diag(diag)."""
        m = self.m
        total = Fraction(0)
        for exps, c in self.terms.items():
            if any(exps[j * m + k] for j in range(m) for k in range(m) if j != k):
                continue
            total += c * math.prod((diag[j] ** exps[j * m + j] for j in range(m)), start=Fraction(1))
        return total


def _poly_mul(p, q):
    out = defaultdict(Fraction)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
    return {e: c for e, c in out.items() if c}


def delta_bruteforce(u: RationalMatrix, z0: DiagonalPositive, s: int) -> Fraction:
    """Symbolic-differentiation oracle for :func:`delta_formula` (integer s >= 0)."""
    m = u.dim
    if m > MAX_ORACLE_DIM or not 0 <= s <= MAX_ORACLE_POWER:
        raise BudgetExceeded(f"oracle limited to m <= {MAX_ORACLE_DIM}, 0 <= s <= {MAX_ORACLE_POWER}")
    if int(s) != s:
        raise ValueError("oracle needs integer s")
    base = ExpPolynomial.det_power(u, int(s))
    result = ExpPolynomial(u)
    for perm, sign in _permutations_with_sign(m):
        term = base
        for j in range(m):
            term = term.derivative(j, perm[j])
        result = result + term.scale(sign)
    det_z0 = math.prod(z0.diag, start=Fraction(1))
    return result.polynomial_at_diagonal(z0.diag) / det_z0 ** int(s)


def n_st_closed(s: int, t: int) -> int:
    """prod_{k=1}^t (s + k - 1) = binom(t + s - 1, s - 1) t!."""
    if s < 1 or t < 0:
        raise ValueError("need s >= 1 and t >= 0")
    return rising(s, t)


def n_st_enumerate(s: int, t: int) -> int:
    """Count tuples of s disjoint (possibly empty) blocks covering a t-set,
    each block carrying a permutation of itself."""
    if s < 1 or t < 0:
        raise ValueError("need s >= 1 and t >= 0")
    if s > 5 or t > 5:
        raise BudgetExceeded("enumeration limited to s <= 5, t <= 5")
    count = 0
    for assignment in itertools.product(range(s), repeat=t):
        sizes = [assignment.count(block) for block in range(s)]
        count += math.prod(math.factorial(k) for k in sizes)
    return count


def interpolate_at(points: Sequence[tuple[Fraction, Fraction]], x) -> Fraction:
    """Exact Lagrange interpolation through ``points`` evaluated at x."""
    x = to_fraction(x)
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        w = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                w *= (x - xj) / (xi - xj)
        total += w * yi
    return total
