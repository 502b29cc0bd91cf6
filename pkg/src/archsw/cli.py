"""Command-line entry point: ``python3 -m archsw {verify,sweep,eval} ...``.

JSON and CSV go to stdout (or --out); diagnostics go to stderr.  Exit codes:
0 pass, 1 failure, 2 usage error.  The number of worker threads used by
``verify`` is read from the ARCHSW_THREADS environment variable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import combinatorial as comb
from . import geometry, special, whittaker
from .verification import SUITES, SuiteConfig

THREADS_ENV = "ARCHSW_THREADS"
SWEEP_HEADER = ["b", "split_deriv", "ei_b", "combination", "target", "residual"]


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            print(f"ignoring malformed {THREADS_ENV}={raw!r}", file=sys.stderr)
    return os.cpu_count() or 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _json_value(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = SuiteConfig(seed=args.seed, tol_scale=args.tol_scale, m_max=args.m_max)
    started = _now()
    with ThreadPoolExecutor(max_workers=min(thread_count(), len(names))) as pool:
        results = list(pool.map(lambda n: SUITES[n](cfg), names))
    cases = sorted((c.to_dict() for group in results for c in group), key=lambda c: c["name"])
    overall = "fail" if any(c["status"] == "fail" for c in cases) else "pass"
    report = {
        "suite": args.suite,
        "seed": args.seed,
        "started_at": started,
        "finished_at": _now(),
        "overall": overall,
        "cases": cases,
    }
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    failed = sum(c["status"] == "fail" for c in cases)
    print(f"{args.suite}: {len(cases)} cases, {failed} failed", file=sys.stderr)
    return 0 if overall == "pass" else 1


# ---------------------------------------------------------------- sweep

def parse_grid(text: str) -> list[float]:
    """Either a comma list of b values or a geometric spec start:factor:count."""
    if ":" in text:
        start, factor, count = text.split(":")
        # rounded to 15 digits so that -1e-1:0.1:4 gives -0.1, -0.01, ... exactly as typed
        return [float(f"{float(start) * float(factor) ** k:.15g}") for k in range(int(count))]
    return [float(tok) for tok in text.split(",") if tok.strip()]


def cmd_sweep(args, parser) -> int:
    try:
        a = comb.NegativeTuple.parse(args.a)
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(f"--a: {exc}")
    try:
        grid = parse_grid(args.b)
    except ValueError as exc:
        parser.error(f"--b: {exc}")
    if not grid or any(not b < 0 for b in grid):
        parser.error("--b: grid points must be negative")
    res = whittaker.limit_sweep(a, grid)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(SWEEP_HEADER)
    for b, split, e, combo in zip(res.b_grid, res.split_derivs, res.ei_values, res.combinations):
        row = [b, split, e, combo, res.target, abs(combo - res.target)]
        writer.writerow([format(v, ".17g") for v in row])
    _emit(buf.getvalue(), args.out)
    print(f"extrapolated_limit={res.extrapolated_limit!r} target={res.target!r}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------- eval

def _need(args, parser, *flags):
    for flag in flags:
        if getattr(args, flag) is None:
            parser.error(f"eval {args.fn} needs --{flag}")


def _evaluate(args, parser) -> dict:
    fn = args.fn
    if fn == "ei":
        _need(args, parser, "x")
        return {"value": special.ei(float(args.x))}
    if fn == "gamma_m":
        _need(args, parser, "m", "s")
        return {"value": special.gamma_m(args.m, float(args.s))}
    if fn in ("f", "h", "d", "deriv_beta"):
        _need(args, parser, "a")
        try:
            a = comb.NegativeTuple.parse(args.a)
        except (ValueError, ZeroDivisionError) as exc:
            parser.error(f"--a: {exc}")
        if fn == "d":
            return {"value": comb.d_m(a)}
        if fn == "deriv_beta":
            return {"value": whittaker.deriv_beta_at_zero(a, args.method or "explicit_sum")}
        _need(args, parser, "x")
        if fn == "f":
            return {"value": comb.f_m(a, Fraction(args.x))}
        if args.mode == "rational_factor":
            return {"value": comb.h_m(a, Fraction(args.x), "rational_factor")}
        return {"value": float(comb.h_m(a, float(args.x)))}
    if fn == "whittaker_n2":
        _need(args, parser, "T", "s")
        return {"value": whittaker.w_star_n2(float(args.T), float(args.s))}
    if fn == "green_integral":
        _need(args, parser, "T")
        res = geometry.integral_xi_c1_n2(float(args.T))
        return {"value": res.value, "error_estimate": res.error_estimate}
    parser.error(f"unknown function {fn}")


def cmd_eval(args, parser) -> int:
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "fn") and v is not None}
    try:
        result = _evaluate(args, parser)
    except (ValueError, ArithmeticError) as exc:
        payload = {"fn": args.fn, "params": params,
                   "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload))
        return 1
    payload = {"fn": args.fn, "params": params}
    payload.update({k: _json_value(v) for k, v in result.items()})
    if isinstance(payload["value"], float) and not math.isfinite(payload["value"]):
        payload["value"] = repr(payload["value"])
    print(json.dumps(payload))
    return 0


# ---------------------------------------------------------------- parser

def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="archsw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and emit a JSON report")
    v.add_argument("suite", choices=["all", *SUITES])
    v.add_argument("--tol-scale", type=_positive_float, default=1.0)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--m-max", type=int, default=6)
    v.add_argument("--out")

    s = sub.add_parser("sweep", help="b -> 0^- sweep of the split derivative, as CSV")
    s.add_argument("--a", required=True, help="comma-separated negative rationals")
    s.add_argument("--b", default="-1e-1:0.1:4", help="comma list or start:factor:count")
    s.add_argument("--out")

    e = sub.add_parser("eval", help="evaluate a single function, as JSON")
    e.add_argument("fn", choices=["ei", "gamma_m", "f", "h", "d", "whittaker_n2",
                                  "green_integral", "deriv_beta"])
    e.add_argument("--x")
    e.add_argument("--a")
    e.add_argument("--m", type=int)
    e.add_argument("--s")
    e.add_argument("--T")
    e.add_argument("--mode", choices=["with_exp", "rational_factor"], default=None)
    e.add_argument("--method", choices=["explicit_sum", "delta_based"], default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "sweep":
        return cmd_sweep(args, parser)
    return cmd_eval(args, parser)


if __name__ == "__main__":
    sys.exit(main())
