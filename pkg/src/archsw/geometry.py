"""Green function, Chern form and Kudla-Millson form on the complex unit ball.

Points z = (z_1, ..., z_{n-1}) of the ball |z| < 1 are numpy complex vectors;
a vector x = sum a_j e_j of the ambient Hermitian space is given by its n
complex coefficients.  Form coefficients are reported in the real
normalisation where (1/2 pi i) dz ^ dzbar contributes -1/pi times dx ^ dy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, OnCycle
from .numerics import DEFAULT_SPEC, IntegrationResult, QuadratureSpec, integrate_disc_radial
from .special import ei

FOUR_PI = 4.0 * math.pi
CYCLE_THRESHOLD = 1e-14


@dataclass(frozen=True)
class BallPoint:
    z: tuple[complex, ...]

    def __post_init__(self):
        z = tuple(complex(c) for c in np.atleast_1d(self.z))
        if sum(abs(c) ** 2 for c in z) >= 1.0:
            raise DomainError("point must lie strictly inside the unit ball")
        object.__setattr__(self, "z", z)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.z, dtype=complex)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.array) ** 2))


@dataclass(frozen=True)
class AmbientVector:
    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise ValueError("ambient vectors have at least two coordinates")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def scaled(self, lam: complex) -> "AmbientVector":
        return AmbientVector(tuple(lam * c for c in self.coefficients))


def _as_points(z) -> np.ndarray:
    if isinstance(z, BallPoint):
        return z.array[None, :]
    arr = np.asarray(z, dtype=complex)
    return arr[None, :] if arr.ndim == 1 else arr


def _linear_form(x: AmbientVector, Z: np.ndarray) -> np.ndarray:
    """a_1 zbar_1 + ... + a_{n-1} zbar_{n-1} - a_n for each row of Z."""
    a = np.array(x.coefficients, dtype=complex)
    if Z.shape[-1] != x.n - 1:
        raise ValueError(f"ball points need {x.n - 1} coordinates, got {Z.shape[-1]}")
    return np.conj(Z) @ a[:-1] - a[-1]


def r_function(x: AmbientVector, z) -> float | np.ndarray:
    """R(x, z) = |a . zbar - a_n|^2 / (1 - |z|^2)."""
    Z = _as_points(z)
    D = 1.0 - np.sum(np.abs(Z) ** 2, axis=-1)
    out = np.abs(_linear_form(x, Z)) ** 2 / D
    return float(out[0]) if isinstance(z, BallPoint) or np.ndim(z) == 1 else out


def green_xi(x: AmbientVector, z: BallPoint) -> float:
    """xi(x) at z, equal to -Ei(-4 pi R(x, z))."""
    R = r_function(x, z)
    if R < CYCLE_THRESHOLD:
        raise OnCycle(f"R(x, z) = {R:.3e}: z lies on the cycle of x")
    return -ei(-FOUR_PI * R)


def chern_density_n2(z: BallPoint) -> float:
    """Real density of c_1 = (1/2 pi i) dz ^ dzbar / (1 - |z|^2)^2 at z."""
    return -1.0 / (math.pi * (1.0 - z.norm_sq) ** 2)


def integral_xi_c1_n2(T: float, spec: QuadratureSpec = DEFAULT_SPEC) -> IntegrationResult:
    """Integral of xi(x) c_1 over the disc for (x, x) = T, n = 2.

    x is taken as sqrt(T) e_1 when T > 0 and sqrt(-T) e_2 when T < 0; in both
    cases R depends on |z| only and the integral is radial.
    """
    if T == 0:
        raise DomainError("T must be nonzero")

    if T > 0:
        def R(r):
            return T * r * r / (1.0 - r * r)
    else:
        def R(r):
            return -T / (1.0 - r * r)

    def g(r):
        arg = np.maximum(FOUR_PI * R(np.asarray(r, dtype=float)), 1e-300)
        return -ei(-arg)

    return integrate_disc_radial(g, spec)


def _partials(x: AmbientVector, Z: np.ndarray):
    """R, dR/dz_i, dR/dzbar_j and d^2R/dz_i dzbar_j at every row of Z."""
    a = np.array(x.coefficients[:-1], dtype=complex)
    L = _linear_form(x, Z)                       # antiholomorphic
    Lbar = np.conj(L)
    N = np.abs(L) ** 2
    D = 1.0 - np.sum(np.abs(Z) ** 2, axis=-1)
    Zbar = np.conj(Z)
    d1, d2, d3 = D[:, None], (D ** 2)[:, None], (D ** 3)[:, None, None]

    R = N / D
    R_z = (L[:, None] * np.conj(a)[None, :]) / d1 + N[:, None] * Zbar / d2
    R_zbar = np.conj(R_z)
    eye = np.eye(Z.shape[-1])
    R_zzbar = (np.conj(a)[None, :, None] * a[None, None, :] / d1[:, :, None]
               + L[:, None, None] * np.conj(a)[None, :, None] * Z[:, None, :] / d2[:, :, None]
               + Lbar[:, None, None] * a[None, None, :] * Zbar[:, :, None] / d2[:, :, None]
               + N[:, None, None] * eye[None] / d2[:, :, None]
               + 2.0 * N[:, None, None] * Zbar[:, :, None] * Z[:, None, :] / d3)
    return R, R_z, R_zbar, R_zzbar, D


def chern_form_matrix(Z) -> np.ndarray:
    """Real-normalised c_1 coefficients: -(1/pi)(delta_ij / D + zbar_i z_j / D^2)."""
    Z = _as_points(Z)
    D = 1.0 - np.sum(np.abs(Z) ** 2, axis=-1)
    eye = np.eye(Z.shape[-1])
    K = eye[None] / D[:, None, None] + np.conj(Z)[:, :, None] * Z[:, None, :] / (D ** 2)[:, None, None]
    return -K / math.pi


def km_form_matrix(x: AmbientVector, Z) -> np.ndarray:
    """Real-normalised coefficients omega(x)_{ij} of dz_i ^ dzbar_j at each point.

    For x = 0 this is the Chern form itself.  Raises OnCycle if any point has
    R(x, z) below the cycle threshold.
    """
    Z = _as_points(Z)
    if x.is_zero:
        return chern_form_matrix(Z)
    R, R_z, R_zbar, R_zzbar, _ = _partials(x, Z)
    if np.any(R < CYCLE_THRESHOLD):
        raise OnCycle("a sample point lies on the cycle of x")
    outer = R_z[:, :, None] * R_zbar[:, None, :]
    Rb = R[:, None, None]
    K = np.exp(-FOUR_PI * Rb) * (-FOUR_PI * outer / Rb + R_zzbar / Rb - outer / Rb ** 2)
    return -K / math.pi


def km_form_coefficient(x: AmbientVector, z: BallPoint, i: int, j: int) -> complex:
    """omega(x)_{ij} at z (0-based indices), from analytic partials of R."""
    return complex(km_form_matrix(x, z.array)[0, i, j])


def km_form_coefficient_fd(x: AmbientVector, z: BallPoint, i: int, j: int,
                           step: float | None = None) -> complex:
    """Finite-difference oracle: (1/pi) d_i dbar_j xi(x) by nested central
    differences at steps h and h/2, combined by Richardson extrapolation.

    The default step is min(1e-4, (1 - |z|^2) / 100).
    """
    if step is None:
        step = min(1e-4, (1.0 - z.norm_sq) / 100.0)
    z0 = z.array
    eye = np.eye(len(z0))

    def xi(v):
        R = float(r_function(x, v))
        if R < CYCLE_THRESHOLD:
            raise OnCycle("finite-difference stencil touches the cycle")
        return -ei(-FOUR_PI * R)

    def mixed(h):
        def diff(f, k, direction):
            e = direction * h * eye[k]
            return lambda v: (f(v + e) - f(v - e)) / (2 * h)
        # d/dzbar_j = (d/dx_j + i d/dy_j) / 2, d/dz_i = (d/dx_i - i d/dy_i) / 2
        dbar_j = lambda v: 0.5 * (diff(xi, j, 1)(v) + 1j * diff(xi, j, 1j)(v))  # noqa: E731
        return 0.5 * (diff(dbar_j, i, 1)(z0) - 1j * diff(dbar_j, i, 1j)(z0))

    value = (4.0 * mixed(step / 2) - mixed(step)) / 3.0
    return complex(value / math.pi)


def sample_ball(rng: np.random.Generator, dim: int, count: int, cap: float) -> np.ndarray:
    """Points with radius 1 - (1 - cap)^u, u uniform, and uniform direction."""
    u = rng.random(count)
    radius = 1.0 - (1.0 - cap) ** u
    direction = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    direction /= np.linalg.norm(direction, axis=1)[:, None]
    return direction * radius[:, None]


def _scaled_max(x: AmbientVector, Z: np.ndarray) -> np.ndarray:
    omega = km_form_matrix(x, Z)
    D = 1.0 - np.sum(np.abs(Z) ** 2, axis=-1)
    return ((D ** 3)[:, None, None] * np.abs(omega)).max(axis=(1, 2))


def _polish(x: AmbientVector, z0: np.ndarray, cap: float) -> float:
    """Local maximisation of the scaled coefficient, kept inside |z| <= cap."""
    dim = len(z0)

    def to_point(v):
        z = v[:dim] + 1j * v[dim:]
        norm = np.linalg.norm(z)
        return z * (cap / norm) if norm > cap else z

    def objective(v):
        z = to_point(v)[None, :]
        if x.is_zero or r_function(x, z)[0] >= CYCLE_THRESHOLD:
            return -float(_scaled_max(x, z)[0])
        return 0.0

    start = np.concatenate([z0.real, z0.imag])
    res = optimize.minimize(objective, start, method="Nelder-Mead",
                            options={"xatol": 1e-9, "fatol": 1e-15, "maxiter": 4000})
    return -min(res.fun, objective(start))


def boundedness_probe(x: AmbientVector, n: int, samples: int, seed: int,
                      cap: float = 0.999, refine: int = 8) -> float:
    """max over sampled z and (i, j) of (1 - |z|^2)^3 |omega(x)_{ij}(z)|.

    The ``refine`` best samples are polished by a local maximisation that
    stays inside the radius cap; refine = 0 returns the raw sample maximum.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if x.n != n:
        raise ValueError("x must have n coordinates")
    rng = np.random.default_rng(seed)
    Z = sample_ball(rng, n - 1, samples, cap)
    if not x.is_zero:
        # resample any point that falls on the cycle
        for _ in range(100):
            bad = r_function(x, Z) < CYCLE_THRESHOLD
            if not np.any(bad):
                break
            Z[bad] = sample_ball(rng, n - 1, int(bad.sum()), cap)
    values = _scaled_max(x, Z)
    best = float(values.max())
    for k in np.argsort(values)[::-1][:refine]:
        best = max(best, _polish(x, Z[k], cap))
    return best
