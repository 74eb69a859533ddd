"""Command-line front end.

Every subcommand prints one table, CSV by default (``--format json`` for JSON) to
stdout or ``--out FILE``. CSV starts with ``#`` comment lines carrying the command
line and parameter values, then the header row, then data rows. Output is a pure
function of the arguments.

Exit codes: 0 success, 2 usage or argument error, 3 numerical or resource failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__, conic, cylinder, oracle, sphere
from .errors import ConvergenceError, ExcludedModeError, ResourceError, UnsupportedFluxError
from .flux import EigenIndex, Flux, as_exact

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    def __init__(self, message: str, table: "OutputTable"):
        super().__init__(message)
        self.table = table


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _comment_value(value: Any) -> str:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(_jsonable(value), sort_keys=True)
    if isinstance(value, float):
        return repr(value)
    return _fmt(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if value is None:
        return None
    return str(value)


@dataclass
class OutputTable:
    headers: list[str]
    rows: list[tuple] = field(default_factory=list)
    format: str = "csv"
    metadata: dict = field(default_factory=dict)
    trailer: Optional[dict] = None

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.headers):
                raise ValueError("row arity does not match headers")

    def render(self) -> str:
        if self.format == "json":
            doc = {
                "metadata": _jsonable(self.metadata),
                "rows": [{h: _jsonable(v) for h, v in zip(self.headers, row)} for row in self.rows],
            }
            if self.trailer is not None:
                doc["fit"] = _jsonable(self.trailer)
            return json.dumps(doc, indent=2) + "\n"
        buf = io.StringIO()
        for key, value in self.metadata.items():
            buf.write(f"# {key}: {_comment_value(value)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.headers)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        if self.trailer is not None:
            buf.write("# " + json.dumps(_jsonable(self.trailer)) + "\n")
        return buf.getvalue()


def _flux(args) -> Flux:
    try:
        b = Flux.parse(args.flux)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return Flux.from_real(float(b.value)) if getattr(args, "generic", False) else b


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _real(text: str) -> float:
    try:
        return float(Fraction(text.strip())) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


def _module(structure: str):
    return cylinder if structure == "cylinder" else sphere


def _indices_text(line) -> str:
    return ";".join(f"({ix.n},{ix.k})" for ix in line.indices)


def cmd_spectrum(args) -> OutputTable:
    """Rows sorted by eigenvalue."""
    b = _flux(args)
    emax = as_exact(args.emax)
    lines = _module(args.structure).enumerate_spectrum(b, emax, cap=args.cap)
    rows = [(ln.lam, ln.multiplicity, _indices_text(ln)) for ln in lines]
    return OutputTable(["lambda", "multiplicity", "indices"], rows)


def _sample_energies(args) -> list[float]:
    if args.E:
        return list(args.E)
    if args.emax is None:
        raise UsageError("give --E values or --emax")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.samples == 1:
        return [args.emax]
    emin = args.emin if args.emin is not None else args.emax / 100.0
    if not 0 < emin < args.emax:
        raise UsageError("need 0 < emin < emax")
    return [float(v) for v in np.geomspace(emin, args.emax, args.samples)]


def cmd_count(args) -> OutputTable:
    """Rows in the order of the sampled energies (ascending)."""
    b = _flux(args)
    mod = _module(args.structure)
    energies = _sample_energies(args)
    rows = []
    fit_samples = []
    for E in energies:
        if args.fast and args.structure == "cylinder":
            N = cylinder.counting_fast(b, E)
        else:
            N = mod.counting_exact(b, E)
        if E > 1:
            ref = mod.weyl_reference(b, E)
            rows.append((E, N, ref.leading, ref.second, N - ref.leading - ref.second))
            fit_samples.append((E, N))
        else:
            rows.append((E, N, float("nan"), float("nan"), float("nan")))
    trailer = None
    if args.fit:
        fit = oracle.weyl_fit(fit_samples)
        trailer = {"a": fit.a, "c": fit.c, "rms": fit.rms}
    return OutputTable(["E", "N_exact", "weyl_leading", "weyl_second", "residual"], rows, trailer=trailer)


def cmd_degeneracy(args) -> OutputTable:
    b = _flux(args)
    if (args.lam is None) == (not args.scan):
        raise UsageError("give exactly one of --lambda or --scan")
    mod = _module(args.structure)
    if args.lam is not None:
        line = mod.multiplicity_bruteforce(b, args.lam)
        claim: Any = "NA"
        agreement: Any = "NA"
        t = args.lam / 4
        if args.structure == "cylinder" and b.is_integer and t > 0 and t.denominator == 1:
            claim = cylinder.multiplicity_divisor_formula(args.lam)
            agreement = "agree" if claim == line.multiplicity else "disagree"
        return OutputTable(
            ["lambda", "mult_bruteforce", "mult_divisor_formula", "agreement"],
            [(args.lam, line.multiplicity, claim, agreement)],
        )
    emax = as_exact(args.emax)
    if args.structure == "sphere":
        scan = sphere.multiplicity_scan(b, emax, strict=not args.nonstrict, k_range=args.k_range)
        if args.lines:
            return OutputTable(["lambda", "multiplicity"], list(scan.lines))
        summary = (float(emax), not args.nonstrict, args.k_range, scan.total_with_multiplicity,
                   scan.distinct, scan.max_halved_multiplicity,
                   ";".join(str(v) for v in scan.argmax_lambdas))
    else:
        if args.k_range != "all":
            raise UsageError("--k-range applies to the sphere scan only")
        lines = cylinder.enumerate_spectrum(b, emax)
        if not args.nonstrict:
            lines = [ln for ln in lines if ln.lam < emax]
        if args.lines:
            return OutputTable(["lambda", "multiplicity"], [(ln.lam, ln.multiplicity) for ln in lines])
        halved = [ln.multiplicity // 2 for ln in lines]
        top = max(halved, default=0)
        summary = (float(emax), not args.nonstrict, "all", sum(ln.multiplicity for ln in lines), len(lines),
                   top, ";".join(str(ln.lam) for ln, h in zip(lines, halved) if h == top and lines))
    return OutputTable(
        ["emax", "strict", "k_range", "total_with_multiplicity", "distinct_lambdas",
         "max_halved_multiplicity", "argmax_lambdas"],
        [summary],
    )


def cmd_eigfun(args) -> OutputTable:
    b = _flux(args)
    if not 0 < args.xmin < args.xmax:
        raise UsageError("need 0 < xmin < xmax")
    if args.structure == "sphere" and args.xmax > math.pi / 2:
        raise UsageError("sphere eigenfunctions live on (0, pi/2]")
    if args.points < 2:
        raise UsageError("need at least 2 points")
    if args.n < 1:
        raise UsageError("n must be >= 1")
    x = np.linspace(args.xmin, args.xmax, args.points)
    sample = _module(args.structure).eigenfunction_radial(b, EigenIndex(args.n, args.k), x)
    table = OutputTable(["x", "value"], list(zip(x.tolist(), sample.values.tolist())))
    table.metadata["lambda"] = sample.lam
    table.metadata["k_phase"] = f"exp(i*{args.k}*angle)"
    return table


def cmd_limit(args) -> OutputTable:
    if args.lam <= 0:
        raise UsageError("lambda must be positive")
    if any(j < 1 for j in args.j):
        raise UsageError("j values must be positive")
    rows = []
    for j in args.j:
        pair = cylinder.degeneration_pair(args.lam, args.k, j)
        rows.append((j, pair.b, pair.n, cylinder.degeneration_sup_error(args.lam, args.k, j)))
    table = OutputTable(["j", "b_j", "n_j", "sup_error"], rows)
    table.metadata["eigenfunction_index"] = "n_j+1"
    table.metadata["x_grid"] = "[0,6] 1201 points"
    return table


def cmd_classify(args) -> OutputTable:
    b = _flux(args)
    """JSON by default; one row per Fourier mode, record fields in the metadata."""
    rec = conic.classify(args.alpha, b, range(args.kmin, args.kmax + 1))
    table = OutputTable(["k", "mode_esa"], sorted(rec.mode_verdicts.items()), "json")
    table.metadata.update({k: v for k, v in rec.as_dict().items() if k != "mode_verdicts"})
    return table


def cmd_verify(args) -> OutputTable:
    b = _flux(args)
    cfg = oracle.DEFAULT_CONFIG
    m = args.modes
    if args.structure == "cylinder":
        if b.is_flux_mode(args.k):
            raise UsageError(f"mode k={args.k} equals the integer flux")
        kappa = float(b.distance(args.k))
        grid = oracle.default_cylinder_grid(kappa, m)
        tol = cfg.cylinder_rel_tol
    else:
        kappa = float(b.distance(args.k))
        grid = cfg.sphere_grid
        tol = cfg.sphere_rel_tol
    if args.left is not None or args.right is not None or args.points is not None:
        grid = oracle.Grid1D(
            args.left if args.left is not None else grid.left,
            args.right if args.right is not None else grid.right,
            args.points if args.points is not None else grid.points,
        )
    if args.tol is not None:
        tol = args.tol
    try:
        if args.structure == "cylinder":
            res = oracle.fd_eigs_cylinder_mode(kappa, grid, m)
        else:
            res = oracle.fd_eigs_sphere_mode(kappa, grid, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    mod = _module(args.structure)
    rows = []
    worst = 0.0
    for n, lam_fd in enumerate(res.eigenvalues, start=1):
        exact = mod.eigenvalue(b, EigenIndex(n, args.k))
        rel = abs(lam_fd - float(exact)) / float(exact)
        worst = max(worst, rel)
        rows.append((n, exact, float(lam_fd), rel))
    table = OutputTable(["n", "lambda_closed_form", "lambda_fd", "relative_error"], rows)
    table.metadata.update({"grid": f"[{grid.left!r},{grid.right!r}] {grid.points} points", "tolerance": tol})
    if worst > tol:
        raise NumericFailure(f"relative error {worst:.3g} exceeds tolerance {tol}", table)
    return table


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", default=None, help="write to FILE instead of stdout")

    flux_opts = argparse.ArgumentParser(add_help=False)
    flux_opts.add_argument("--flux", default="0", help="P or P/Q (default 0)")
    flux_opts.add_argument("--generic", action="store_true",
                           help="treat the flux as a generic (irrational surrogate) real")

    structure = argparse.ArgumentParser(add_help=False)
    structure.add_argument("--structure", choices=["cylinder", "sphere"], required=True)

    parser = argparse.ArgumentParser(prog="grushin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common, structure, flux_opts], help="enumerate eigenvalues <= emax")
    p.add_argument("--emax", type=_real, required=True)
    p.add_argument("--cap", type=int, default=cylinder.DEFAULT_INDEX_CAP)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("count", parents=[common, structure, flux_opts], help="counting function vs Weyl law")
    p.add_argument("--emax", type=_real)
    p.add_argument("--emin", type=_real)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--E", type=_real, nargs="+", help="explicit energies (overrides --emax/--samples)")
    p.add_argument("--fast", action="store_true", help="O(sqrt E) hyperbola counter (cylinder, b in Z or Z+1/2)")
    p.add_argument("--fit", action="store_true", help="append the least-squares Weyl fit")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("degeneracy", parents=[common, structure, flux_opts], help="multiplicities")
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--emax", type=_real, default=3e6, help="scan bound (default 3e6)")
    p.add_argument("--nonstrict", action="store_true", help="scan lambda <= emax instead of lambda < emax")
    p.add_argument("--k-range", choices=["all", "nonnegative"], default="all")
    p.add_argument("--lines", action="store_true", help="emit every (lambda, multiplicity) line of the scan")
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("eigfun", parents=[common, structure, flux_opts], help="sample a radial eigenfunction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--xmin", type=_real, default=0.05)
    p.add_argument("--xmax", type=_real, default=5.0)
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=cmd_eigfun)

    p = sub.add_parser("limit", parents=[common], help="eigenfunction degeneration to the Bessel limit")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--j", type=int, nargs="+", default=[10, 100, 1000])
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("classify", parents=[common, flux_opts], help="conic self-adjointness verdicts")
    p.add_argument("--alpha", type=_real, required=True)
    p.add_argument("--kmin", type=int, default=-20)
    p.add_argument("--kmax", type=int, default=20)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common, structure, flux_opts], help="FD oracle vs closed form")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modes", type=int, default=4)
    p.add_argument("--left", type=_real)
    p.add_argument("--right", type=_real)
    p.add_argument("--points", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(table: OutputTable, args, argv: Sequence[str]) -> None:
    if args.format is not None:
        table.format = args.format
    meta = {"version": __version__, "command": "grushin " + " ".join(argv)}
    meta.update({k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "out", "command")})
    meta.update(table.metadata)
    table.metadata = meta
    text = table.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_NEGATIVE_VALUE = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+([eE][+-]?\d+)?|\d+[eE][+-]?\d+)$")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--flag -1/2`` into ``--flag=-1/2``; argparse would read -1/2 as an option."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        table = args.func(args)
    except NumericFailure as exc:
        _emit(exc.table, args, argv)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ResourceError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ExcludedModeError, UnsupportedFluxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(table, args, argv)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
