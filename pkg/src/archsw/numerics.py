"""Quadrature and differentiation primitives.

Exact rational arithmetic uses :class:`fractions.Fraction` directly; this
module only re-exports it as ``BigRational`` so call sites read naturally.

The 1D integrator is a globally adaptive Gauss-Kronrod (7/15) scheme.  Its
nodes are strictly interior to every panel, so integrands with a removable or
integrable endpoint singularity are never evaluated at the endpoint.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import NonConvergence, NonFiniteEvaluation, SingularBoundary

BigRational = Fraction

# Kronrod 15-point abscissae on [-1, 1] (non-negative half) and weights;
# the Gauss 7-point rule uses every other Kronrod node.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes sit at odd positions of the full 15-node Kronrod array.
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


class Transform(str, enum.Enum):
    EXP_SUBSTITUTION = "exp_substitution"
    RATIONAL_SUBSTITUTION = "rational_substitution"


class Direction(str, enum.Enum):
    TO_PLUS_INF = "to_plus_inf"
    FROM_MINUS_INF = "from_minus_inf"


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    semi_infinite_transform: Transform = Transform.EXP_SUBSTITUTION

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        object.__setattr__(self, "semi_infinite_transform",
                           Transform(self.semi_infinite_transform))

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def scaled(self, factor: float) -> "QuadratureSpec":
        return QuadratureSpec(self.abs_tol * factor, self.rel_tol * factor,
                              self.max_subdivisions, self.semi_infinite_transform)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def __float__(self):
        return self.value


def _evaluate(f, x: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array of nodes, falling back to a scalar loop."""
    try:
        y = np.asarray(f(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([f(float(t)) for t in x], dtype=float)
    return y


def _gk15(f, a: float, b: float):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = center + half * _NODES
    y = _evaluate(f, x)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise NonFiniteEvaluation(f"integrand is not finite at x={bad!r}", point=float(bad))
    kronrod = half * float(np.dot(_KWEIGHTS, y))
    gauss = half * float(np.dot(_GWEIGHTS, y))
    return kronrod, abs(kronrod - gauss)


def integrate_1d(f: Callable, a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC,
                 *, raise_on_failure: bool = True) -> IntegrationResult:
    """Adaptive Gauss-Kronrod estimate of the integral of ``f`` over ``(a, b)``.

    ``f`` may accept a numpy array (preferred) or a scalar.  When the budget
    of ``spec.max_subdivisions`` panels is exhausted, :class:`NonConvergence`
    is raised (or an unconverged result returned if ``raise_on_failure`` is
    false).
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")

    value, err = _gk15(f, a, b)
    evaluations = 15
    # max-heap on panel error
    heap = [(-err, a, b, value)]
    frozen = []  # panels too narrow to bisect further
    total_value, total_err = value, err

    def finish(converged):
        res = IntegrationResult(total_value, total_err, evaluations, converged)
        if not converged and raise_on_failure:
            worst = max(heap + frozen, key=lambda p: -p[0])
            raise NonConvergence(
                f"quadrature on ({a}, {b}) did not converge: value={total_value!r}, "
                f"error estimate {total_err:.3e} after {evaluations} evaluations",
                result=res, worst_panel=(worst[1], worst[2]))
        return res

    while True:
        if total_err <= spec.tolerance(total_value):
            return finish(True)
        if not heap or len(heap) + len(frozen) >= spec.max_subdivisions:
            return finish(False)
        neg_err, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            frozen.append((neg_err, lo, hi, _))
            continue
        left_v, left_e = _gk15(f, lo, mid)
        right_v, right_e = _gk15(f, mid, hi)
        evaluations += 30
        heapq.heappush(heap, (-left_e, lo, mid, left_v))
        heapq.heappush(heap, (-right_e, mid, hi, right_v))
        panels = heap + frozen
        total_value = math.fsum(p[3] for p in panels)
        total_err = math.fsum(-p[0] for p in panels)


def integrate_semi_infinite(f: Callable, a: float, direction: Direction | str,
                            spec: QuadratureSpec = DEFAULT_SPEC, **kwargs) -> IntegrationResult:
    """Integrate over ``(a, inf)`` or ``(-inf, a)`` by mapping onto ``(0, 1)``."""
    direction = Direction(direction)
    a = float(a)
    exp_sub = spec.semi_infinite_transform is Transform.EXP_SUBSTITUTION

    if direction is Direction.TO_PLUS_INF:
        if exp_sub:
            def mapping(u):
                return a - np.log(u), 1.0 / u
        else:
            def mapping(u):
                return a + u / (1.0 - u), 1.0 / (1.0 - u) ** 2
    else:
        if exp_sub:
            def mapping(u):
                return a + np.log(u), 1.0 / u
        else:
            def mapping(u):
                return a - (1.0 - u) / u, 1.0 / u ** 2

    def g(u):
        with np.errstate(over="ignore", divide="ignore", invalid="ignore", under="ignore"):
            x, jac = mapping(np.asarray(u, dtype=float))
            ok = np.isfinite(x) & np.isfinite(jac)
            fx = _evaluate(f, np.where(ok, x, a))
            # past float range the integrand has decayed to nothing
            return np.where(ok & (fx != 0.0), fx * jac, 0.0)

    return integrate_1d(g, 0.0, 1.0, spec, **kwargs)


def integrate_disc_radial(g: Callable, spec: QuadratureSpec = DEFAULT_SPEC,
                          radius: float = 1.0, **kwargs) -> IntegrationResult:
    """Integrate a radial function against the c_1 density over ``|z| < radius``.

    Returns ``-2 * int_0^radius g(r) r (1 - r^2)^-2 dr``, which is the integral of
    ``g(|z|) (1/2 pi i) dz ^ dzbar / (1 - |z|^2)^2`` with the real orientation
    ``dz ^ dzbar = -2i dx ^ dy``.
    """
    def integrand(r):
        r = np.asarray(r, dtype=float)
        w = 1.0 - r * r
        gr = np.asarray(g(r), dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = -2.0 * gr * r / (w * w)
        # g may underflow to exactly 0 where the weight is huge
        return np.where(gr == 0.0, 0.0, out)

    try:
        return integrate_1d(integrand, 0.0, radius, spec, **kwargs)
    except NonConvergence as exc:
        if radius == 1.0 and exc.worst_panel and exc.worst_panel[1] == 1.0:
            raise SingularBoundary(str(exc), exc.result, exc.worst_panel) from None
        raise
    except NonFiniteEvaluation as exc:
        # bisection crowded the panels against r = 1 until a node hit it
        if radius == 1.0 and exc.point == 1.0:
            raise SingularBoundary(f"integrand still unresolved at r = 1: {exc}") from None
        raise


def central_derivative(f: Callable[[float], float], x: float, order: str = "first",
                       step: float = 1e-4) -> float:
    """Richardson-extrapolated central difference: ``(4 D(h/2) - D(h)) / 3``."""
    if order != "first":
        raise ValueError("only first derivatives are supported")
    if not step > 0:
        raise ValueError("step must be positive")

    def diff(h):
        hi, lo = f(x + h), f(x - h)
        d = (hi - lo) / (2.0 * h)
        if not math.isfinite(d):
            raise NonFiniteEvaluation(f"non-finite difference quotient at x={x!r}, h={h!r}")
        return d

    coarse = diff(step)
    fine = diff(step / 2.0)
    return (4.0 * fine - coarse) / 3.0
