"""Verification suites: every identity and oracle comparison, as report cases.

Each suite is a function (config) -> list[Case].  Exact cases carry
residual = tolerance = None; numeric cases pass when residual <= tolerance,
where the tolerance already includes the caller's ``tol_scale``.
"""
from __future__ import annotations

import math
import traceback
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import combinatorial as comb
from . import delta, geometry, special, whittaker
from .numerics import integrate_disc_radial, integrate_semi_infinite


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    tol_scale: float = 1.0
    m_max: int = 6
    random_tuples: int = 100


@dataclass
class Case:
    name: str
    status: str
    residual: float | None
    tolerance: float | None
    detail: str

    def to_dict(self) -> dict:
        return asdict(self)


def exact_case(name: str, ok: bool, detail: str = "") -> Case:
    return Case(name, "pass" if ok else "fail", None, None, detail)


def numeric_case(name: str, residual: float, tolerance: float, detail: str = "") -> Case:
    residual = float(residual)
    if not math.isfinite(residual):
        return Case(name, "fail", None, tolerance, f"non-finite residual; {detail}".strip("; "))
    return Case(name, "pass" if residual <= tolerance else "fail", residual, tolerance, detail)


def guarded(name: str, fn: Callable[[], list[Case] | Case]) -> list[Case]:
    """Run fn; an exception becomes a single failing case."""
    try:
        out = fn()
    except Exception as exc:  # noqa: BLE001 - every failure must land in the report
        last = traceback.extract_tb(exc.__traceback__)[-1]
        return [Case(name, "fail", None, None,
                     f"{type(exc).__name__}: {exc} ({last.name}:{last.lineno})")]
    return out if isinstance(out, list) else [out]


def _rng(cfg: SuiteConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, stream])


# ---------------------------------------------------------------- combinatorial

def suite_combinatorial(cfg: SuiteConfig) -> list[Case]:
    cases: list[Case] = []
    rng = _rng(cfg, 1)
    m_hi = max(1, cfg.m_max)
    for k in range(cfg.random_tuples):
        m = 1 + k % m_hi
        a = comb.random_negative_tuple(rng, m)
        a_next = comb.random_negative_tuple(rng, 1).entries[0]
        x = comb.random_nonpole_rational(rng, a.append(a_next))
        tag = f"m{m}/#{k:03d}"
        cases += guarded(f"combinatorial/f_at_zero/{tag}",
                         lambda: exact_case(f"combinatorial/f_at_zero/{tag}",
                                            comb.f_m(a, 0) == 1, f"a={a}"))
        t = int(rng.integers(0, m))
        cases += guarded(f"combinatorial/telescoping/{tag}",
                         lambda: exact_case(f"combinatorial/telescoping/{tag}",
                                            comb.verify_telescoping(a, t), f"a={a} t={t}"))
        cases += guarded(f"combinatorial/u_identity/{tag}",
                         lambda: exact_case(f"combinatorial/u_identity/{tag}",
                                            comb.verify_u_identity(a, a_next, x),
                                            f"a={a} a_next={a_next} x={x}"))
        cases += guarded(f"combinatorial/f_difference/{tag}",
                         lambda: exact_case(f"combinatorial/f_difference/{tag}",
                                            comb.verify_f_difference(a, a_next, x),
                                            f"a={a} a_next={a_next} x={x}"))
        cases += guarded(f"combinatorial/h_recursion/{tag}",
                         lambda: exact_case(f"combinatorial/h_recursion/{tag}",
                                            comb.verify_h_recursion(a, a_next, x),
                                            f"a={a} a_next={a_next} x={x}"))
    grid = (-5.0, -2.0, -0.5, -0.05)
    for m in (1, 2, 3):
        a = comb.random_negative_tuple(rng, m)
        name = f"combinatorial/antiderivative/m{m}"
        cases += guarded(name, lambda: numeric_case(
            name, comb.verify_antiderivative(a, grid, 1e-4), 1e-6 * cfg.tol_scale, f"a={a}"))
    return cases


# ---------------------------------------------------------------- delta

def _random_rational_matrix(rng, m: int) -> delta.RationalMatrix:
    return delta.RationalMatrix(tuple(
        tuple(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(m))
        for _ in range(m)))


def _random_positive_diag(rng, m: int) -> delta.DiagonalPositive:
    return delta.DiagonalPositive(tuple(Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
                                        for _ in range(m)))


def suite_delta(cfg: SuiteConfig, instances: int = 20) -> list[Case]:
    cases: list[Case] = []
    rng = _rng(cfg, 2)
    for m in range(1, min(3, max(1, cfg.m_max)) + 1):
        for s in range(4):
            for k in range(instances):
                u = _random_rational_matrix(rng, m)
                z0 = _random_positive_diag(rng, m)
                name = f"delta/formula_vs_oracle/m{m}/s{s}/#{k:02d}"
                cases += guarded(name, lambda: exact_case(
                    name, delta.delta_formula(u, z0, s) == delta.delta_bruteforce(u, z0, s)))
        u = _random_rational_matrix(rng, m)
        z0 = _random_positive_diag(rng, m)
        name = f"delta/polynomial_extension/m{m}"

        def extension():
            pts = [(Fraction(s), delta.delta_bruteforce(u, z0, s)) for s in range(1, m + 2)]
            s_new = Fraction(-7, 3)
            return exact_case(name, delta.interpolate_at(pts, s_new)
                              == delta.delta_formula(u, z0, s_new), "s=-7/3")
        cases += guarded(name, extension)
    for s in range(1, 6):
        for t in range(0, 6):
            name = f"delta/n_st/s{s}/t{t}"
            cases += guarded(name, lambda: exact_case(
                name, delta.n_st_closed(s, t) == delta.n_st_enumerate(s, t)))
    return cases


# ---------------------------------------------------------------- special

def suite_special(cfg: SuiteConfig) -> list[Case]:
    cases: list[Case] = []
    for c in (0.1, 1.0, 4 * math.pi):
        name = f"special/ei_vs_integral/c={c:.6g}"

        def check():
            ref = integrate_semi_infinite(lambda t: np.exp(-t) / t, c, "to_plus_inf")
            return numeric_case(name, abs(special.ei(-c) + ref.value), 1e-10 * cfg.tol_scale)
        cases += guarded(name, check)
    for b in (-1e-3, -1e-4, -1e-6):
        name = f"special/ei_small_argument/b={b:.0e}"
        cases += guarded(name, lambda: numeric_case(
            name, abs(special.ei(b) - math.log(abs(b)) - special.EULER_GAMMA),
            2 * abs(b) * cfg.tol_scale))
    name = "special/gamma_m/m2_s3"
    cases += guarded(name, lambda: numeric_case(
        name, abs(special.gamma_m(2, 3.0) - 2 * math.pi), 1e-12 * cfg.tol_scale))
    for a1, expected in ((1.0, 2.0), (2.0, 1.5)):
        name = f"special/omega_1_oracle/z={a1:g}"
        cases += guarded(name, lambda: numeric_case(
            name, abs(special.omega_1(a1, 2.0, 1.0) - expected), 1e-8 * cfg.tol_scale))
    name = "special/alpha_derivative_probe/z=1"
    cases += guarded(name, lambda: numeric_case(
        name, abs(special.alpha_derivative_probe(1.0)), 1e-6 * cfg.tol_scale))
    return cases


# ---------------------------------------------------------------- whittaker

SIX_T = (0.25, 1.0, 4.0, -0.25, -1.0, -4.0)


def suite_whittaker(cfg: SuiteConfig, tuples: int = 50) -> list[Case]:
    cases: list[Case] = []
    for T in SIX_T:
        name = f"whittaker/deriv_vs_closed_form/T={T:g}"
        cases += guarded(name, lambda: numeric_case(
            name, abs(whittaker.w_star_n2_deriv_at_half(T) + whittaker.closed_form_deriv(T)),
            1e-8 * cfg.tol_scale))
    name = "whittaker/two_representations/T=1_s=1.5"
    cases += guarded(name, lambda: numeric_case(
        name, abs(whittaker.w_star_n2(1.0, 1.5) - whittaker.w_star_n2_unshifted(1.0, 1.5)),
        1e-8 * cfg.tol_scale))

    rng = _rng(cfg, 3)
    m_hi = max(1, cfg.m_max)
    for k in range(tuples):
        m = 1 + k % m_hi
        a = comb.random_negative_tuple(rng, m)
        name = f"whittaker/deriv_beta_methods/m{m}/#{k:02d}"

        def methods():
            e = whittaker.deriv_beta_at_zero(a, "explicit_sum")
            d = whittaker.deriv_beta_at_zero(a, "delta_based")
            return exact_case(name, e == d == comb.h_m_at_zero(a), f"a={a}")
        cases += guarded(name, methods)
        name0 = f"whittaker/constant_value/m{m}/#{k:02d}"
        cases += guarded(name0, lambda: exact_case(
            name0, whittaker.w_star_pos_def_two_var(a, 0) == 1, f"a={a}"))
    name = "whittaker/beta_one_vs_zeta_oracle/a=-1"
    cases += guarded(name, lambda: numeric_case(
        name, abs(float(whittaker.w_star_pos_def_two_var((-1,), 1))
                  - special.omega_1(1.0, 2.0, 1.0)), 1e-8 * cfg.tol_scale))

    for a in ((-1,), (-1, -2), (Fraction(-1, 2), -3)):
        label = ",".join(str(Fraction(v)) for v in a)
        name = f"whittaker/limit_sweep/a=({label})"

        def sweep():
            res = whittaker.limit_sweep(a)
            monotone = all(r1 > r2 for r1, r2 in zip(res.residuals, res.residuals[1:]))
            out = numeric_case(name, abs(res.extrapolated_limit - res.target),
                               1e-4 * cfg.tol_scale, f"residuals={res.residuals}")
            if not monotone:
                out.status, out.detail = "fail", "residuals not strictly decreasing; " + out.detail
            return out
        cases += guarded(name, sweep)
    for T_flat in (1 / (4 * math.pi), 1.0):
        name = f"whittaker/triple_crosscheck/T_flat={T_flat:.6g}"
        cases += guarded(name, lambda: numeric_case(
            name, whittaker.triple_crosscheck_n2(T_flat), 1e-4 * cfg.tol_scale))
    return cases


# ---------------------------------------------------------------- geometry

PROBE_VECTORS = {
    2: {"zero": (0, 0), "negative": (0, 1), "mixed": (1, 1)},
    3: {"zero": (0, 0, 0), "negative": (0, 0, 1), "mixed": (1, 0, 1)},
}


def suite_geometry(cfg: SuiteConfig, probe_samples: int = 10_000) -> list[Case]:
    cases: list[Case] = []
    for T in SIX_T:
        name = f"geometry/disc_integral_vs_closed_form/T={T:g}"

        def check():
            closed = whittaker.closed_form_deriv(T)
            tol = 1e-6 * max(1.0, abs(closed)) if T > 0 else 1e-9
            got = geometry.integral_xi_c1_n2(T).value
            return numeric_case(name, abs(got - closed), tol * cfg.tol_scale)
        cases += guarded(name, check)
    name = "geometry/chern_mass/rho=1/sqrt2"
    cases += guarded(name, lambda: numeric_case(
        name, abs(integrate_disc_radial(lambda r: np.ones_like(r), radius=math.sqrt(0.5)).value + 1),
        1e-8 * cfg.tol_scale))

    rng = _rng(cfg, 4)
    for k in range(5):
        x = geometry.AmbientVector(tuple(complex(*rng.normal(size=2)) for _ in range(3)))
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z = geometry.BallPoint(tuple(z * rng.uniform(0.1, 0.8) / np.linalg.norm(z)))
        name = f"geometry/km_form_vs_fd/#{k}"

        def fd_check():
            worst = max(abs(geometry.km_form_coefficient(x, z, i, j)
                            - geometry.km_form_coefficient_fd(x, z, i, j))
                        for i in range(2) for j in range(2))
            scale = max(1e-300, max(abs(geometry.km_form_coefficient(x, z, i, j))
                                    for i in range(2) for j in range(2)))
            return numeric_case(name, worst / scale, 1e-5 * cfg.tol_scale)
        cases += guarded(name, fd_check)
        name_h = f"geometry/hermitian_symmetry/#{k}"
        cases += guarded(name_h, lambda: numeric_case(
            name_h, abs(geometry.km_form_coefficient(x, z, 0, 1)
                        - np.conj(geometry.km_form_coefficient(x, z, 1, 0))), 1e-10 * cfg.tol_scale))

    name = "geometry/km_form_small_x_limit"
    cases += guarded(name, lambda: numeric_case(
        name, abs(geometry.km_form_coefficient(geometry.AmbientVector((0, 1e-4)),
                                               geometry.BallPoint((0,)), 0, 0) + 1 / math.pi),
        1e-3 * cfg.tol_scale))

    for n, vectors in PROBE_VECTORS.items():
        for label, coeffs in vectors.items():
            name = f"geometry/boundedness_probe/n{n}/{label}"

            def probe():
                x = geometry.AmbientVector(coeffs)
                hi = geometry.boundedness_probe(x, n, probe_samples, cfg.seed, cap=0.999)
                lo = geometry.boundedness_probe(x, n, probe_samples, cfg.seed, cap=0.99)
                return numeric_case(name, max(0.0, hi / lo - 1.0), 0.05 * cfg.tol_scale,
                                    f"max(0.999)={hi!r} max(0.99)={lo!r}")
            cases += guarded(name, probe)
    return cases


SUITES: dict[str, Callable[[SuiteConfig], list[Case]]] = {
    "combinatorial": suite_combinatorial,
    "delta": suite_delta,
    "special": suite_special,
    "whittaker": suite_whittaker,
    "geometry": suite_geometry,
}
