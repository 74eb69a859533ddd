#!/usr/bin/env python3
"""Sup distance between flux eigenfunctions and the Bessel limit as the flux tends to an integer.

Two paths to the same lambda: b_j = k + lambda / (4 (2j + 1)) with radial index 2j + 1,
and a flux sequence b -> k with radial index n(b) (whose eigenvalue only brackets lambda).
"""

import argparse
from fractions import Fraction

import numpy as np

from grushin import cylinder, specialfn
from grushin.flux import EigenIndex, Flux


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lam", type=Fraction, default=Fraction(15, 4))
    ap.add_argument("--k", type=int, default=0)
    args = ap.parse_args()
    lam, k = args.lam, args.k
    x = np.linspace(0.0, 6.0, 1201)
    target = cylinder.generalized_eigenfunction(float(lam), x).values

    print("j, b_j, sup_error")
    for j in (1, 3, 10, 30, 100, 300, 1000):
        pair = cylinder.degeneration_pair(lam, k, j)
        print(f"{j}, {pair.b}, {cylinder.degeneration_sup_error(lam, k, j):.3e}")

    print("b, n(b), lambda_n(b), sup_error")
    for denom in (10, 100, 1000, 10000):
        b = Flux.of(k + Fraction(1, denom))
        n = cylinder.n_of_b(lam, k, b)
        # n(b) is even, so the Whittaker sign (-1)^(n-1) is negative; flip it to compare
        psi = np.zeros_like(x)
        kappa = float(b.distance(k))
        psi[1:] = -specialfn.whittaker_w_half(n, kappa * x[1:] ** 2) / x[1:]
        lam_n = cylinder.eigenvalue(b, EigenIndex(n, k))
        print(f"{b}, {n}, {float(lam_n):.6f}, {np.max(np.abs(psi - target)):.3e}")


if __name__ == "__main__":
    main()
