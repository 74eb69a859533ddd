#!/usr/bin/env python3
"""Hemisphere multiplicity census at b = 0 under every counting convention.

Sweeps strict / non-strict cutoff, k over all integers or k >= 0, and an overall
eigenvalue scale c in lambda = c n (n + |k|), and prints one CSV row per
combination. Reference target: total 4893535 with a unique top halved multiplicity 110.
"""

import argparse
import csv
import sys
import time
from fractions import Fraction

from grushin import sphere
from grushin.flux import Flux

TARGET_TOTAL = 4_893_535
TARGET_TOP = 110


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--emax", type=float, default=3e6)
    ap.add_argument("--scales", type=int, nargs="+", default=[1, 2, 4, 8, 16])
    args = ap.parse_args()

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["scale", "strict", "k_range", "total", "distinct", "max_halved", "n_argmax", "seconds", "matches"])
    for c in args.scales:
        # c n (n + |k|) < emax  <=>  4 n (n + |k|) < 4 emax / c
        bound = Fraction(args.emax) * 4 / c
        for strict in (True, False):
            for kr in ("all", "nonnegative"):
                t0 = time.perf_counter()
                scan = sphere.multiplicity_scan(Flux(0), bound, strict=strict, k_range=kr, cap=1e9)
                dt = time.perf_counter() - t0
                top = scan.max_halved_multiplicity
                match = scan.total_with_multiplicity == TARGET_TOTAL and top == TARGET_TOP
                out.writerow([c, strict, kr, scan.total_with_multiplicity, scan.distinct, top,
                              len(scan.argmax_lambdas), f"{dt:.3f}", match])


if __name__ == "__main__":
    main()
