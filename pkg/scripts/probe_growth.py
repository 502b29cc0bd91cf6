"""Boundary behaviour of the Kudla-Millson form: sup of (1 - |z|^2)^k |omega_ij|
for k = 2, 3 as the sampling radius cap approaches 1."""
import argparse

import numpy as np

from archsw import geometry


def scaled_sup(x, n, cap, samples, seed, power):
    rng = np.random.default_rng(seed)
    Z = geometry.sample_ball(rng, n - 1, samples, cap)
    keep = geometry.r_function(x, Z) >= geometry.CYCLE_THRESHOLD if not x.is_zero else slice(None)
    Z = Z[keep]
    omega = geometry.km_form_matrix(x, Z)
    D = 1.0 - np.sum(np.abs(Z) ** 2, axis=-1)
    return float(((D ** power)[:, None, None] * np.abs(omega)).max())


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    caps = (0.9, 0.99, 0.999, 0.9999)
    cases = {"n=2 zero": (2, (0, 0)), "n=2 negative": (2, (0, 1)), "n=2 mixed": (2, (1, 1)),
             "n=3 negative": (3, (0, 0, 1)), "n=3 isotropic": (3, (1, 0, 1))}
    print(f"{'case':<14} {'power':>5} " + " ".join(f"{c:>12}" for c in caps))
    for label, (n, coeffs) in cases.items():
        x = geometry.AmbientVector(coeffs)
        for power in (2, 3):
            row = [scaled_sup(x, n, c, args.samples, args.seed, power) for c in caps]
            print(f"{label:<14} {power:>5} " + " ".join(f"{v:>12.4e}" for v in row))
    print("\npolished probe (power 3, cap 0.999):")
    for label, (n, coeffs) in cases.items():
        v = geometry.boundedness_probe(geometry.AmbientVector(coeffs), n, 10_000, args.seed)
        print(f"  {label:<14} {v:.6e}")


if __name__ == "__main__":
    main()
