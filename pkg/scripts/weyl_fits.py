#!/usr/bin/env python3
"""Two-term Weyl fits N(E) ~ a E log E + c E for both structures and several fluxes."""

import argparse
import math

import numpy as np

from grushin import cylinder, oracle, sphere
from grushin.flux import Flux
from grushin.specialfn import EULER_GAMMA


def fit_row(name, b, counter, energies, c_reference):
    fit = oracle.weyl_fit([(E, counter(b, E)) for E in energies])
    print(f"{name:8s} b={str(b):5s} a={fit.a:.6f} c={fit.c:+.5f} c_ref={c_reference:+.5f} rms={fit.rms:.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--emin", type=float, default=1e6)
    ap.add_argument("--emax", type=float, default=1e8)
    ap.add_argument("--samples", type=int, default=5)
    args = ap.parse_args()
    energies = np.geomspace(args.emin, args.emax, args.samples)

    # E-coefficient of the reference two-term law, divided by E
    for b in (Flux(0), Flux(1, 2)):
        ref = cylinder.weyl_reference(b, math.e).second / math.e
        fit_row("cylinder", b, cylinder.counting_fast, energies, ref)
    for b in (Flux(1, 3), Flux(1, 8)):
        ref = cylinder.weyl_reference(b, math.e).second / math.e
        fit_row("cylinder", b, cylinder.counting_exact, energies[:3], ref)
    # with floors kept, D(x) = x log x + (2 gamma - 1) x + O(sqrt x)
    print(f"floor-corrected cylinder constant at b=0: {(2 * EULER_GAMMA - 1 - 2 * math.log(2)) / 2:+.5f}")
    for b in (Flux(0), Flux(1, 3)):
        ref = sphere.weyl_reference(b, math.e).second / math.e
        fit_row("sphere", b, sphere.counting_exact, energies, ref)


if __name__ == "__main__":
    main()
