"""Grushin hemisphere S_+ (pole removed, Dirichlet) with Aharonov-Bohm flux b.

Mode k has eigenvalues 4 n (n + |k - b|), n >= 1, with radial eigenfunctions
cos(x)^kt F(-n, n + kt; 1 + kt; cos(x)^2), kt = |k - b|, on x in (0, pi/2).
The singular set (equator) is x = 0 and the removed pole is x = pi/2.

For b = p/q the eigenvalue is (4/q) n (n q + |kq - p|); scans group on that
integer key so multiplicities are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Union

import numpy as np

from . import specialfn
from .cylinder import DEFAULT_INDEX_CAP
from .errors import ResourceError, UnsupportedFluxError
from .flux import (
    EigenfunctionSample,
    EigenIndex,
    Flux,
    SpectralLine,
    WeylReference,
    as_exact,
    group_lines,
)

DEFAULT_SCAN_CAP = 10**7
# dense bincount below this key range, sort-based grouping above
_BINCOUNT_LIMIT = 50_000_000

KRange = Literal["all", "nonnegative"]


def eigenvalue(b: Flux, idx: EigenIndex) -> Union[Fraction, float]:
    """lambda_{n,k} = 4 n (n + |k - b|)."""
    b = Flux.of(b)
    return 4 * idx.n * (idx.n + b.distance(idx.k))


def ground_state(b: Flux, k: int):
    """Lowest eigenvalue of mode k, 4 (1 + |k - b|)."""
    return eigenvalue(b, EigenIndex(1, k))


def eigenfunction_radial(b: Flux, idx: EigenIndex, x_nodes) -> EigenfunctionSample:
    b = Flux.of(b)
    x = np.asarray(x_nodes, dtype=float)
    if np.any(x <= 0) or np.any(x > math.pi / 2):
        raise ValueError("sphere eigenfunctions are sampled on (0, pi/2]")
    kt = float(b.distance(idx.k))
    c = np.cos(x)
    values = np.abs(c) ** kt * specialfn.hypergeom_terminating(idx.n, idx.n + kt, 1.0 + kt, c * c)
    return EigenfunctionSample(x, values, k=idx.k, lam=eigenvalue(b, idx))


def _rgamma(a: float) -> float:
    if a <= 0 and float(a).is_integer():
        return 0.0
    sign = math.copysign(1.0, math.gamma(a)) if a < 171 else 1.0
    return sign * math.exp(-math.lgamma(a))


def singular_set_value(branch: int, kappa: float, lam: float) -> float:
    """Value at the equator (z = cos^2 x = 1) of the two Frobenius branches, by Gauss summation.

    branch 2 is cos^kt F(kt/2 - s/2, kt/2 + s/2; 1 + kt; z), branch 1 the same with
    kt -> -kt, where s = sqrt(kt^2 + lam). Phase factors i^{+-kt} are dropped. Branch 1
    with integer kt >= 1 has c = 1 - kt on a pole; it is then not defined and is
    reported as inf (it certainly does not vanish).
    """
    s = math.sqrt(kappa * kappa + lam)
    kt = kappa if branch == 2 else -kappa
    c = 1.0 + kt
    if c <= 0 and c.is_integer():
        return math.inf
    return math.gamma(c) * _rgamma(1.0 + kt / 2 - s / 2) * _rgamma(1.0 + kt / 2 + s / 2)


def _key_range(b: Flux, n: int, budget: Fraction, strict: bool, k_range: KRange):
    """k values with n (n q + |kq - p|) below budget (key units)."""
    p, q = b.numerator, b.denominator
    room = budget / n - n * q
    mmax = math.ceil(room) - 1 if strict else math.floor(room)
    if mmax < 0:
        return None
    lo = math.ceil(Fraction(p - mmax, q))
    hi = math.floor(Fraction(p + mmax, q))
    if k_range == "nonnegative":
        lo = max(lo, 0)
    if lo > hi:
        return None
    return lo, hi


def _n_upper(b: Flux, budget: Fraction) -> int:
    # smallest key for radial index n is n * n * q
    return math.isqrt(math.floor(budget / b.denominator)) + 1


def enumerate_spectrum(b: Flux, emax, cap: int = DEFAULT_INDEX_CAP) -> list[SpectralLine]:
    b = Flux.of(b)
    emax = as_exact(emax)
    if emax <= 0:
        return []
    total = counting_exact(b, emax)
    if total > cap:
        raise ResourceError(f"{total} index pairs below {emax} exceed the cap {cap}")
    if b.generic:
        lines = []
        n = 1
        while 4 * n * n <= emax:
            kmax = (emax - 4 * n * n) / (4 * n)
            for k in range(math.ceil(b.real - kmax), math.floor(b.real + kmax) + 1):
                lam = eigenvalue(b, EigenIndex(n, k))
                if lam <= emax:
                    lines.append(SpectralLine(lam, [EigenIndex(n, k)]))
            n += 1
        return sorted(lines, key=lambda ln: ln.lam)
    p, q = b.numerator, b.denominator
    budget = emax * q / 4
    pairs = []
    for n in range(1, _n_upper(b, budget) + 1):
        kr = _key_range(b, n, budget, strict=False, k_range="all")
        if kr is None:
            continue
        for k in range(kr[0], kr[1] + 1):
            pairs.append((n * (n * q + abs(k * q - p)), EigenIndex(n, k)))
    return group_lines(pairs, Fraction(4, q))


def counting_exact(b: Flux, E, strict: bool = False) -> int:
    """N_b(E) with multiplicity; sums the closed-form k-interval length per n (O(sqrt E))."""
    b = Flux.of(b)
    E = as_exact(E)
    if E <= 0:
        return 0
    v = b.value
    total = 0
    n = 1
    while 4 * n * n < E or (not strict and 4 * n * n == E):
        K = (E - 4 * n * n) / (4 * n)
        if b.generic:
            K = float(K)
        if strict:
            cnt = (math.ceil(v + K) - 1) - (math.floor(v - K) + 1) + 1
        else:
            cnt = math.floor(v + K) - math.ceil(v - K) + 1
        total += max(cnt, 0)
        n += 1
    return total


def weyl_reference(b: Flux, E: float) -> WeylReference:
    """(E/4) log E + (gamma - log 2 - 1/2) E/2; the flux only enters the O(sqrt E) remainder."""
    E = float(E)
    if E <= 1:
        raise ValueError("Weyl reference needs E > 1")
    const = specialfn.EULER_GAMMA - math.log(2.0) - 0.5
    return WeylReference(leading=0.25 * E * math.log(E), second=0.5 * E * const)


def multiplicity_bruteforce(b: Flux, lam) -> SpectralLine:
    """All (n, k) with 4 n (n + |k - b|) == lam exactly."""
    b = Flux.of(b)
    if b.generic:
        raise UnsupportedFluxError("exact multiplicities need a rational flux")
    lam = Fraction(lam)
    indices = []
    n = 1
    while 4 * n * n <= lam:
        d = lam / (4 * n) - n  # required |k - b|
        for k in {b.value + d, b.value - d}:
            if k.denominator == 1:
                indices.append(EigenIndex(n, int(k)))
        n += 1
    return SpectralLine(lam, indices)


@dataclass
class MultiplicityScan:
    """Exact multiplicity census of all eigenvalues below (or up to) emax."""

    emax: Fraction
    strict: bool
    k_range: str
    scale: Fraction
    keys: np.ndarray
    multiplicities: np.ndarray

    @property
    def total_with_multiplicity(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def distinct(self) -> int:
        return int(self.keys.size)

    @property
    def max_halved_multiplicity(self) -> int:
        if self.keys.size == 0:
            return 0
        return int((self.multiplicities // 2).max())

    @property
    def argmax_lambdas(self) -> list[Fraction]:
        if self.keys.size == 0:
            return []
        h = self.multiplicities // 2
        return [self.scale * int(key) for key in self.keys[h == h.max()]]

    @property
    def lines(self) -> Iterator[tuple[Fraction, int]]:
        for key, mult in zip(self.keys.tolist(), self.multiplicities.tolist()):
            yield self.scale * key, mult


def multiplicity_scan(
    b: Flux,
    emax,
    strict: bool = True,
    k_range: KRange = "all",
    cap: float = DEFAULT_SCAN_CAP,
) -> MultiplicityScan:
    """Enumerate every (n, k) with eigenvalue < emax (<= if not strict) and group exactly.

    k_range="nonnegative" restricts to k >= 0, i.e. counts each +-k pair once at b = 0.
    """
    b = Flux.of(b)
    if b.generic:
        raise UnsupportedFluxError("exact multiplicity scans need a rational flux")
    emax = as_exact(emax)
    if emax > cap:
        raise ResourceError(f"scan bound {float(emax)} exceeds the cap {cap}")
    p, q = b.numerator, b.denominator
    budget = emax * q / 4
    chunks = []
    for n in range(1, _n_upper(b, budget) + 1):
        kr = _key_range(b, n, budget, strict, k_range)
        if kr is None:
            continue
        k = np.arange(kr[0], kr[1] + 1, dtype=np.int64)
        chunks.append(n * (n * q + np.abs(k * q - p)))
    if not chunks:
        empty = np.zeros(0, dtype=np.int64)
        return MultiplicityScan(emax, strict, k_range, Fraction(4, q), empty, empty)
    all_keys = np.concatenate(chunks)
    top = int(all_keys.max())
    if top <= _BINCOUNT_LIMIT:
        counts = np.bincount(all_keys, minlength=top + 1)
        keys = np.flatnonzero(counts)
        mults = counts[keys]
    else:
        keys, mults = np.unique(all_keys, return_counts=True)
    return MultiplicityScan(emax, strict, k_range, Fraction(4, q), keys.astype(np.int64), mults.astype(np.int64))
