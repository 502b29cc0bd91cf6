"""Both sides of the n = 2 identity: disc integral of xi(x) c_1 against the
derivative of the Whittaker function at s = 1/2, over a range of T."""
import argparse
from dataclasses import dataclass

import numpy as np

from archsw import geometry, whittaker


@dataclass(frozen=True)
class Config:
    t_min: float = 0.05
    t_max: float = 8.0
    points: int = 9


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--t-min", type=float, default=Config.t_min)
    p.add_argument("--t-max", type=float, default=Config.t_max)
    p.add_argument("--points", type=int, default=Config.points)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(p.parse_args()).items()})

    mags = np.geomspace(cfg.t_min, cfg.t_max, cfg.points)
    print(f"{'T':>10} {'disc integral':>22} {'-dW/ds quadrature':>22} {'closed form':>22} {'gap':>9}")
    for T in np.concatenate([mags, -mags]):
        disc = geometry.integral_xi_c1_n2(T).value
        quad = -whittaker.w_star_n2_deriv_at_half(T)
        closed = whittaker.closed_form_deriv(T)
        gap = max(abs(disc - closed), abs(quad - closed))
        print(f"{T:>10.4g} {disc:>22.15e} {quad:>22.15e} {closed:>22.15e} {gap:>9.1e}")


if __name__ == "__main__":
    main()
