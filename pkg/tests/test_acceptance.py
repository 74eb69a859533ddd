"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Tolerances come from oracle.DEFAULT_CONFIG. Criterion 1 is expected to fail; see
scripts/sphere_degeneracy_scan.py for the convention sweep behind that verdict.
"""

import json
import math
import random
import time
from fractions import Fraction

import numpy as np

from grushin import cli, conic, cylinder, oracle, sphere
from grushin.flux import EigenfunctionSample, EigenIndex, Flux
from grushin.oracle import DEFAULT_CONFIG as CFG
from grushin.specialfn import EULER_GAMMA

WEYL_ENERGIES = [1e6, 10**6.5, 1e7, 10**7.5, 1e8]


def test_ac01_sphere_multiplicity_scan(record_criterion):
    t0 = time.perf_counter()
    scan = sphere.multiplicity_scan(Flux(0), 3 * 10**6, strict=True)
    elapsed = time.perf_counter() - t0
    total, top, argmax = scan.total_with_multiplicity, scan.max_halved_multiplicity, scan.argmax_lambdas
    sweep = {
        (strict, kr): sphere.multiplicity_scan(Flux(0), 3 * 10**6, strict=strict, k_range=kr).total_with_multiplicity
        for strict in (True, False)
        for kr in ("all", "nonnegative")
    }
    ok = total == 4_893_535 and top == 110 and len(argmax) == 1 and elapsed < 60
    detail = (
        f"total={total} (want 4893535) max_halved={top} (want 110) argmax={[str(v) for v in argmax]} "
        f"t={elapsed:.2f}s; conventions "
        + ", ".join(f"{'strict' if s else 'nonstrict'}/{kr}={v}" for (s, kr), v in sweep.items())
    )
    record_criterion(1, ok, detail)
    assert ok, detail


def test_ac02_cylinder_fd(record_criterion):
    t0 = time.perf_counter()
    target = np.array([4, 8, 12, 16, 20.0])
    grid = CFG.cylinder_grid
    coarse = oracle.fd_eigs_cylinder_mode(1.0, grid, 5).eigenvalues
    fine = oracle.fd_eigs_cylinder_mode(1.0, grid.refined(), 5).eigenvalues
    elapsed = time.perf_counter() - t0
    rel = np.abs(coarse - target) / target
    ratio = np.abs(coarse - target) / np.abs(fine - target)
    lo, hi = CFG.refinement_ratio
    ok = bool(np.all(rel < CFG.cylinder_rel_tol) and np.all((ratio >= lo) & (ratio <= hi)) and elapsed < 10)
    detail = f"max rel err {rel.max():.2e}, halving ratios {np.round(ratio, 3).tolist()}, t={elapsed:.2f}s"
    record_criterion(2, ok, detail)
    assert ok, detail


def test_ac03_sphere_fd(record_criterion):
    t0 = time.perf_counter()
    k2 = oracle.fd_eigs_sphere_mode(2.0, CFG.sphere_grid, 4).eigenvalues
    kh = oracle.fd_eigs_sphere_mode(0.5, CFG.sphere_grid, 3).eigenvalues
    elapsed = time.perf_counter() - t0
    rel2 = np.abs(k2 - [12, 32, 60, 96]) / [12, 32, 60, 96]
    relh = np.abs(kh - [6, 20, 42]) / [6, 20, 42]
    ok = bool(np.all(rel2 < CFG.sphere_rel_tol) and np.all(relh < CFG.sphere_rel_tol) and elapsed < 10)
    detail = f"kappa=2 max rel {rel2.max():.2e}, kappa=1/2 max rel {relh.max():.2e}, t={elapsed:.2f}s"
    record_criterion(3, ok, detail)
    assert ok, detail


def test_ac04_cylinder_weyl(record_criterion):
    t0 = time.perf_counter()
    fit = oracle.weyl_fit([(E, cylinder.counting_fast(Flux(0), E)) for E in WEYL_ENERGIES])
    elapsed = time.perf_counter() - t0
    printed_c = (EULER_GAMMA - 2 * math.log(2)) / 2
    ok = abs(fit.a - 0.5) / 0.5 <= CFG.weyl_coefficient_tol and elapsed < 5
    detail = f"a={fit.a:.6f} c={fit.c:.4f} (printed constant {printed_c:.4f}, reported only) t={elapsed:.3f}s"
    record_criterion(4, ok, detail)
    assert ok, detail


def test_ac05_sphere_weyl(record_criterion):
    t0 = time.perf_counter()
    fit = oracle.weyl_fit([(E, sphere.counting_exact(Flux(0), E)) for E in WEYL_ENERGIES])
    elapsed = time.perf_counter() - t0
    ok = abs(fit.a - 0.25) / 0.25 <= CFG.weyl_coefficient_tol and elapsed < 5
    ref_c = (EULER_GAMMA - math.log(2) - 0.5) / 2
    detail = f"a={fit.a:.6f} c={fit.c:.4f} (reference {ref_c:.4f}) t={elapsed:.3f}s"
    record_criterion(5, ok, detail)
    assert ok, detail


def test_ac06_flux_counting_monotone(record_criterion):
    fluxes = [Flux(1, 2), Flux(1, 4), Flux(1, 8), Flux(1, 16)]
    counts = [cylinder.counting_exact(b, 10**6) for b in fluxes]
    ok = all(a < b for a, b in zip(counts, counts[1:]))
    record_criterion(6, ok, f"N_b(1e6) for b=1/2,1/4,1/8,1/16: {counts}")
    assert ok


def test_ac07_level_spacing(record_criterion):
    bad = []
    for b in (Flux(0), Flux(1, 3), Flux(1, 2), Flux(2, 7)):
        for k in range(-50, 51):
            if b.is_flux_mode(k):
                continue
            for n in range(2, 6):
                gap = cylinder.eigenvalue(b, EigenIndex(n, k)) - cylinder.eigenvalue(b, EigenIndex(n - 1, k))
                if not (gap == cylinder.level_spacing(b, k) == 4 * abs(k - b.value)):
                    bad.append((str(b), k, n))
    ok = not bad
    record_criterion(7, ok, f"exact rational spacing checks, failures={bad[:5]}")
    assert ok


def test_ac08_bessel_degeneration(record_criterion, capsys):
    code = cli.main(["limit", "--lambda", "3.75", "--k", "0", "--j", "10", "100", "1000"])
    out = capsys.readouterr().out
    data = [ln.split(",") for ln in out.splitlines() if ln and not ln.startswith("#")][1:]
    errs = [float(r[3]) for r in data]
    ok = code == 0 and errs[0] > errs[1] > errs[2] and errs[2] < CFG.limit_sup_bound
    record_criterion(8, ok, f"sup errors j=10,100,1000: {[f'{e:.3e}' for e in errs]}")
    assert ok


def test_ac09_n_of_b_sandwich(record_criterion):
    rng = random.Random(20240521)
    failures = []
    for _ in range(1000):
        lam = Fraction(rng.randint(1, 4000), rng.randint(1, 40))
        k = rng.randint(-20, 20)
        b = Flux.of(k + Fraction(rng.choice([-1, 1]) * rng.randint(1, 999), rng.randint(1000, 100000)) + rng.randint(-2, 2))
        if b.is_flux_mode(k):
            continue
        d = b.distance(k)
        val = cylinder.eigenvalue(b, EigenIndex(cylinder.n_of_b(lam, k, b), k))
        if not (0 <= val - lam < 8 * d):
            failures.append((lam, k, b))
    ok = not failures
    record_criterion(9, ok, f"1000 exact samples, failures={len(failures)}")
    assert ok


def test_ac10_eigenfunction_residuals(record_criterion):
    worst = {}
    cx = CFG.cylinder_residual_grid.nodes()
    sx = CFG.sphere_residual_grid.nodes()
    for b in (Flux(0), Flux(1, 3)):
        for line in cylinder.enumerate_spectrum(b, 100):
            for ix in line.indices:
                kappa = float(b.distance(ix.k))
                s = cylinder.eigenfunction_radial(b, ix, cx)
                r1 = oracle.ode_residual(oracle.cylinder_quotient_coefficients(kappa), s, float(line.lam))
                r2 = oracle.ode_residual(
                    oracle.cylinder_coefficients(kappa), EigenfunctionSample(cx, cx * s.values), float(line.lam)
                )
                worst["cylinder"] = max(worst.get("cylinder", 0.0), r1, r2)
        for line in sphere.enumerate_spectrum(b, 100):
            for ix in line.indices:
                s = sphere.eigenfunction_radial(b, ix, sx)
                r = oracle.ode_residual(oracle.sphere_coefficients(float(b.distance(ix.k))), s, float(line.lam))
                worst["sphere"] = max(worst.get("sphere", 0.0), r)
    ok = all(v < CFG.residual_tol for v in worst.values())
    record_criterion(10, ok, "worst residuals " + ", ".join(f"{k}={v:.2e}" for k, v in worst.items()))
    assert ok


def test_ac11_multiplicity_report(record_criterion, tmp_path):
    lams = range(4, 401, 4)
    report = [
        {"lambda": int(c.lam), "bruteforce": c.bruteforce, "divisor_formula": c.divisor_formula}
        for c in cylinder.multiplicity_comparison(lams)
        if not c.agree
    ]
    path = tmp_path / "multiplicity_report.json"
    path.write_text(json.dumps(report, indent=2))
    odd_agree = all(c.agree for c in cylinder.multiplicity_comparison(lams) if (c.lam / 4) % 2 == 1)
    even_only = all((row["lambda"] // 4) % 2 == 0 for row in json.loads(path.read_text()))
    ok = odd_agree and (not report or even_only)
    record_criterion(11, ok, f"{len(report)} disagreements, all with lambda/4 even={even_only}; odd all agree={odd_agree}")
    assert ok


TRUTH_TABLE = [
    # (alpha, b, k or None for the full operator, expected)
    (1.0, Fraction(0), None, True),
    (-2.0, Fraction(0), None, False),
    (-2.0, Fraction(1, 2), None, True),
    (-2.0, Fraction(0), 0, False),
    (-2.0, Fraction(0), 3, True),
    (0.5, Fraction(0), 5, False),
    (-2.0, Fraction(0), 1, True),
    (-2.0, Fraction(0), -1, True),
    (1.0, Fraction(1, 2), None, True),
    (2.0, Fraction(0), "type", conic.ConicSpectralType.ACPlusEmbeddedDiscrete),
    (2.0, Fraction(1, 3), "type", conic.ConicSpectralType.PurelyDiscrete),
    (-0.5, Fraction(2, 5), "type", conic.ConicSpectralType.OutOfScope),
]

BOUNDARY_PROBES = [
    # b = 0, mode 0 and the full operator, at alpha = boundary - 1e-9, boundary, boundary + 1e-9
    (-3.0, 0, [True, True, False], [True, True, False]),
    (-1.0, 0, [False, False, False], [False, False, False]),
    (1.0, 0, [False, True, True], [False, True, True]),
    (-1.0, 1, [True, True, False], None),
]


def _verdict(alpha, b, k):
    b = Flux.of(b)
    if k is None:
        return conic.is_full_operator_esa(alpha, b)
    if k == "type":
        return conic.spectral_type(alpha, b)[0]
    return conic.is_mode_esa(alpha, k, b)


def test_ac12_classification_table(record_criterion):
    mismatches = [(a, str(b), k) for a, b, k, want in TRUTH_TABLE if _verdict(a, b, k) != want]
    for boundary, k, mode_want, full_want in BOUNDARY_PROBES:
        alphas = [boundary - 1e-9, boundary, boundary + 1e-9]
        if [conic.is_mode_esa(a, k, Flux(0)) for a in alphas] != mode_want:
            mismatches.append(("mode", boundary, k))
        if full_want is not None and [conic.is_full_operator_esa(a, Flux(0)) for a in alphas] != full_want:
            mismatches.append(("full", boundary))
    notes = conic.spectral_type(-0.5, Flux(2, 5))[1]
    if conic.NOTE_ALPHA_MINUS_HALF not in notes:
        mismatches.append(("note", -0.5))
    ok = not mismatches
    record_criterion(12, ok, f"{len(TRUTH_TABLE)} verdicts + {len(BOUNDARY_PROBES)} boundary probes, mismatches={mismatches}")
    assert ok
