"""Acceptance gate: each test checks one criterion at its stated tolerance and
records a PASS/FAIL line (printed in the pytest terminal summary)."""
import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction as F

import numpy as np

from archsw import combinatorial as comb
from archsw import delta, geometry, special, whittaker
from archsw.numerics import integrate_semi_infinite

from acceptance_log import record

POS_T = (0.25, 1.0, 4.0)
NEG_T = (-0.25, -1.0, -4.0)
SIX_T = POS_T + NEG_T


def test_criterion_01_n2_end_to_end():
    start = time.perf_counter()
    worst_rel, worst_abs = 0.0, 0.0
    ok = True
    for T in SIX_T:
        closed = whittaker.closed_form_deriv(T)
        diff = abs(geometry.integral_xi_c1_n2(T).value - closed)
        if T > 0:
            worst_rel = max(worst_rel, diff / max(1.0, abs(closed)))
            ok &= diff <= 1e-6 * max(1.0, abs(closed))
        else:
            worst_abs = max(worst_abs, diff)
            ok &= diff <= 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    assert record(1, "disc integral of xi c_1 equals the closed form, n = 2", ok,
                  f"T>0 scaled err {worst_rel:.2e}, T<0 abs err {worst_abs:.2e}, {elapsed:.2f}s")


def test_criterion_02_whittaker_representations():
    worst = max(abs(whittaker.w_star_n2_deriv_at_half(T) + whittaker.closed_form_deriv(T))
                for T in SIX_T)
    two = abs(whittaker.w_star_n2(1.0, 1.5) - whittaker.w_star_n2_unshifted(1.0, 1.5))
    ok = worst <= 1e-8 and two <= 1e-8
    assert record(2, "Whittaker derivative vs closed form; two integral representations", ok,
                  f"deriv err {worst:.2e}, representation gap {two:.2e}")


def test_criterion_03_exact_combinatorics():
    rng = np.random.default_rng(2024)
    failures, count = 0, 0
    for m in range(1, 7):
        for _ in range(100):
            a = comb.random_negative_tuple(rng, m)
            a_next = comb.random_negative_tuple(rng, 1).entries[0]
            x = comb.random_nonpole_rational(rng, a.append(a_next))
            checks = [
                comb.f_m(a, 0) == 1,
                all(comb.verify_telescoping(a, t) for t in range(m)),
                comb.verify_f_difference(a, a_next, x),
                comb.verify_u_identity(a, a_next, x),
                comb.verify_h_recursion(a, a_next, x),
            ]
            failures += checks.count(False)
            count += 1
    assert record(3, "exact identities (f_m(0) = 1, telescoping, u and f differences, h recursion)",
                  failures == 0, f"{count} tuples, m = 1..6, {failures} failures")


def test_criterion_04_antiderivative():
    rng = np.random.default_rng(4)
    grid = (-5.0, -2.0, -0.5, -0.05)
    worst = 0.0
    for m in (1, 2, 3):
        for a in [tuple(-F(k) for k in range(1, m + 1))] + [comb.random_negative_tuple(rng, m)
                                                            for _ in range(5)]:
            worst = max(worst, comb.verify_antiderivative(a, grid, 1e-4))
    assert record(4, "h_m' = (1 - f_m) e^x / x by Richardson differences", worst <= 1e-6,
                  f"max relative residual {worst:.2e}")


def _rand_matrix(rng, m):
    return delta.RationalMatrix(tuple(tuple(F(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
                                            for _ in range(m)) for _ in range(m)))


def _rand_diag(rng, m):
    return delta.DiagonalPositive(tuple(F(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
                                        for _ in range(m)))


def test_criterion_05_delta_operator():
    rng = np.random.default_rng(5)
    mismatches = 0
    for m in (1, 2, 3):
        for s in range(4):
            for _ in range(20):
                u, z0 = _rand_matrix(rng, m), _rand_diag(rng, m)
                mismatches += delta.delta_formula(u, z0, s) != delta.delta_bruteforce(u, z0, s)
        u, z0 = _rand_matrix(rng, m), _rand_diag(rng, m)
        pts = [(F(s), delta.delta_bruteforce(u, z0, s)) for s in range(1, m + 2)]
        mismatches += delta.interpolate_at(pts, F(-7, 3)) != delta.delta_formula(u, z0, F(-7, 3))
    counts = sum(delta.n_st_closed(s, t) != delta.n_st_enumerate(s, t)
                 for s in range(1, 6) for t in range(6))
    ok = mismatches == 0 and counts == 0
    assert record(5, "Delta formula = symbolic oracle; s = -7/3 extension; tuple counts", ok,
                  f"{mismatches} formula mismatches, {counts} count mismatches")


def test_criterion_06_positive_definite_derivative():
    rng = np.random.default_rng(6)
    bad = 0
    for m in range(1, 7):
        for _ in range(50):
            a = comb.random_negative_tuple(rng, m)
            e = whittaker.deriv_beta_at_zero(a, "explicit_sum")
            d = whittaker.deriv_beta_at_zero(a, "delta_based")
            bad += not (e == d == comb.h_m_at_zero(a))
            bad += whittaker.w_star_pos_def_two_var(a, 0) != 1
    oracle = abs(float(whittaker.w_star_pos_def_two_var((-1,), 1)) - special.omega_1(1.0, 2.0, 1.0))
    ok = bad == 0 and oracle <= 1e-8
    assert record(6, "beta-derivative: delta-based = explicit sum = h_m(0); W*(n, 0) = 1", ok,
                  f"{bad} exact mismatches over 300 tuples, zeta oracle gap {oracle:.2e}")


def test_criterion_07_limit_positive_definite():
    start = time.perf_counter()
    ok, notes = True, []
    for a in ((-1,), (-1, -2), (F(-1, 2), -3)):
        res = whittaker.limit_sweep(a, (-1e-1, -1e-2, -1e-3, -1e-4))
        monotone = all(r1 > r2 for r1, r2 in zip(res.residuals, res.residuals[1:]))
        err = abs(res.extrapolated_limit - res.target)
        ok &= monotone and err <= 1e-4
        notes.append(f"{err:.1e}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    assert record(7, "b -> 0^- limit equals h_m(0), monotone residuals", ok,
                  f"extrapolation errors {', '.join(notes)}, {elapsed:.2f}s")


def test_criterion_08_triple_crosscheck():
    gaps = [whittaker.triple_crosscheck_n2(T) for T in (1 / (4 * math.pi), 1.0)]
    assert record(8, "closed form, exact sum and sweep agree at n = 2", max(gaps) <= 1e-4,
                  f"max gaps {gaps[0]:.1e}, {gaps[1]:.1e}")


def test_criterion_09_ei_quality():
    gaps = []
    for c in (0.1, 1.0, 4 * math.pi):
        tail = integrate_semi_infinite(lambda t: np.exp(-t) / t, c, "to_plus_inf").value
        gaps.append(abs(special.ei(-c) + tail))
    bounds = [abs(special.ei(b) - math.log(abs(b)) - special.EULER_GAMMA) / (2 * abs(b))
              for b in (-1e-3, -5e-4, -1e-4, -1e-6)]
    ok = max(gaps) <= 1e-10 and max(bounds) <= 1.0
    assert record(9, "Ei vs exponential tail integral; small-argument bound", ok,
                  f"max gap {max(gaps):.1e}, max bound ratio {max(bounds):.2f}")


PROBES = {2: ((0, 0), (0, 1), (1, 1)), 3: ((0, 0, 0), (0, 0, 1), (1, 0, 1))}


def test_criterion_10_boundedness_probe():
    ratios = []
    for n, vectors in PROBES.items():
        for coeffs in vectors:
            x = geometry.AmbientVector(coeffs)
            hi = geometry.boundedness_probe(x, n, 10_000, seed=7, cap=0.999)
            lo = geometry.boundedness_probe(x, n, 10_000, seed=7, cap=0.99)
            ratios.append(hi / lo)
    assert record(10, "(1 - |z|^2)^3 |omega_ij| stabilises as the radius cap grows",
                  max(ratios) <= 1.05, f"max ratio {max(ratios):.6f}")


def _verify(*extra):
    env = dict(os.environ, ARCHSW_THREADS="1")
    return subprocess.run([sys.executable, "-m", "archsw", "verify", "all", *extra],
                          capture_output=True, text=True, env=env)


def _strip_timestamps(text):
    report = json.loads(text)
    report.pop("started_at")
    report.pop("finished_at")
    return json.dumps(report, sort_keys=True)


def test_criterion_11_cli_determinism_and_exit_codes():
    first, second = _verify("--seed", "7"), _verify("--seed", "7")
    identical = _strip_timestamps(first.stdout) == _strip_timestamps(second.stdout)
    negative = _verify("--seed", "7", "--tol-scale", "1e-6")
    ok = first.returncode == 0 and second.returncode == 0 and identical and negative.returncode == 1
    assert record(11, "verify all is reproducible; impossible tolerances exit 1", ok,
                  f"exit codes {first.returncode}/{second.returncode}/{negative.returncode}, "
                  f"identical={identical}")
