"""Sweep b -> 0^- for several tuples a and show how d/ds W*_T + Ei(b)
approaches h_m(0), together with the extrapolated limit."""
import argparse
from dataclasses import dataclass, field

import numpy as np

from archsw import whittaker
from archsw.combinatorial import NegativeTuple


@dataclass(frozen=True)
class Config:
    tuples: tuple[str, ...] = ("-1", "-1,-2", "-1/2,-3", "-1/3,-2,-5/2")
    b_exponents: tuple[int, ...] = field(default=(1, 2, 3, 4, 5))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", action="append", help="tuple such as -1/2,-3 (repeatable)")
    p.add_argument("--max-exponent", type=int, default=5)
    args = p.parse_args()
    cfg = Config(tuple(args.a) if args.a else Config.tuples,
                 tuple(range(1, args.max_exponent + 1)))

    grid = [-(10.0 ** -k) for k in cfg.b_exponents]
    for text in cfg.tuples:
        a = NegativeTuple.parse(text)
        res = whittaker.limit_sweep(a, grid)
        print(f"a = {a}, target h_m(0) = {whittaker.comb.h_m_at_zero(a)} = {res.target:.15g}")
        for b, combo, r in zip(res.b_grid, res.combinations, res.residuals):
            # the leading correction is O(b log|b|)
            scale = abs(b * np.log(abs(b)))
            print(f"  b = {b:9.1e}  combination = {combo:.15f}  residual = {r:.3e}"
                  f"  residual / |b log b| = {r / scale:.4f}")
        print(f"  extrapolated limit {res.extrapolated_limit:.12f}"
              f"  (error {abs(res.extrapolated_limit - res.target):.1e})\n")


if __name__ == "__main__":
    main()
