"""Grushin cylinder R_+ x S^1 with Aharonov-Bohm flux b.

Mode k of -Delta^b has eigenvalues 4 n |k - b| (n >= 1) with eigenfunctions
e^{ik theta} W_{n,1/2}(|k-b| x^2) / x. For integer b the mode k = b carries the
absolutely continuous part instead of eigenvalues.

For rational b = p/q every eigenvalue is (4/q) * n |kq - p|, so exact work is done
on the integer key n |kq - p|; floats only appear when values are evaluated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import specialfn
from .errors import ExcludedModeError, ResourceError, UnsupportedFluxError
from .flux import (
    EigenfunctionSample,
    EigenIndex,
    Flux,
    SpectralLine,
    WeylReference,
    as_exact,
    group_lines,
)

DEFAULT_INDEX_CAP = 5_000_000
_CHUNK = 1 << 20


class SpectralType(enum.Enum):
    AbsolutelyContinuousPlusEmbedded = "AbsolutelyContinuousPlusEmbedded"
    PurePoint = "PurePoint"


def _check_mode(b: Flux, k: int) -> None:
    if b.is_flux_mode(k):
        raise ExcludedModeError(f"mode k={k} equals the integer flux b={b}")


def eigenvalue(b: Flux, idx: EigenIndex) -> Union[Fraction, float]:
    """lambda^b_{n,k} = 4 n |k - b|."""
    b = Flux.of(b)
    _check_mode(b, idx.k)
    return 4 * idx.n * b.distance(idx.k)


def eigenfunction_radial(b: Flux, idx: EigenIndex, x_nodes) -> EigenfunctionSample:
    """W_{n,1/2}(|k-b| x^2) / x.

    Multiplying by x gives the solution of the Laplace-Beltrami mode equation
    (oracle.cylinder_coefficients); the quotient itself solves the conjugated
    equation (oracle.cylinder_quotient_coefficients), as does the Bessel limit.
    """
    b = Flux.of(b)
    _check_mode(b, idx.k)
    x = np.asarray(x_nodes, dtype=float)
    if np.any(x <= 0):
        raise ValueError("cylinder eigenfunctions are sampled at x > 0")
    kappa = float(b.distance(idx.k))
    values = specialfn.whittaker_w_half(idx.n, kappa * x * x) / x
    return EigenfunctionSample(x, values, k=idx.k, lam=eigenvalue(b, idx))


def generalized_eigenfunction(lam: float, x_nodes) -> EigenfunctionSample:
    """Regular generalised eigenfunction (sqrt(lam)/2) J_1(sqrt(lam) x) of the flux mode.

    At lam = 0 the regular branch c1 x^{3/2} is dropped by the bounded normalisation,
    so the samples are identically zero.
    """
    if lam < 0:
        raise ValueError("generalised eigenvalue must be >= 0")
    x = np.asarray(x_nodes, dtype=float)
    if lam == 0:
        return EigenfunctionSample(x, np.zeros_like(x), lam=lam)
    s = math.sqrt(float(lam))
    return EigenfunctionSample(x, 0.5 * s * specialfn.bessel_j(1, s * x), lam=lam)


def _mode_range(b: Flux, radius) -> range:
    """Integers k with |k - b| <= radius."""
    v = b.value
    return range(math.ceil(v - radius), math.floor(v + radius) + 1)


def enumerate_spectrum(b: Flux, emax, cap: int = DEFAULT_INDEX_CAP) -> list[SpectralLine]:
    """Every eigenvalue <= emax, grouped by exact value and sorted ascending."""
    b = Flux.of(b)
    emax = as_exact(emax)
    if emax <= 0:
        return []
    total = counting_exact(b, emax)
    if total > cap:
        raise ResourceError(f"{total} index pairs below {emax} exceed the cap {cap}")
    if b.generic:
        lines = []
        for k in _mode_range(b, emax / 4):
            d = b.distance(k)
            n = 1
            while 4 * n * d <= emax:
                lines.append(SpectralLine(4 * n * d, [EigenIndex(n, k)]))
                n += 1
        return sorted(lines, key=lambda ln: ln.lam)
    p, q = b.numerator, b.denominator
    budget = math.floor(emax * q / 4)
    pairs = []
    for k in _mode_range(b, emax / 4):
        m = abs(k * q - p)
        if m == 0:
            continue
        for n in range(1, budget // m + 1):
            pairs.append((n * m, EigenIndex(n, k)))
    return group_lines(pairs, Fraction(4, q))


def counting_exact(b: Flux, E) -> int:
    """N_b(E): eigenvalues <= E counted with multiplicity, sum_k floor(E / (4|k-b|))."""
    b = Flux.of(b)
    E = as_exact(E)
    if E <= 0:
        return 0
    if b.generic:
        total = 0
        for k in _mode_range(b, E / 4):
            d = b.distance(k)
            if d > 0:
                total += math.floor(E / (4 * d))
        return total
    p, q = b.numerator, b.denominator
    budget = math.floor(E * q / 4)  # floor(T / m) = floor(floor(T) / m) for integer m
    if budget == 0:
        return 0
    lo = math.ceil(Fraction(p - budget, q))
    hi = math.floor(Fraction(p + budget, q))
    total = 0
    for start in range(lo, hi + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, hi + 1), dtype=np.int64)
        m = np.abs(k * q - p)
        m = m[m > 0]
        total += int(np.sum(budget // m))
    return total


def divisor_summatory(x: int) -> int:
    """D(x) = sum_{m<=x} floor(x/m) via the Dirichlet hyperbola method, O(sqrt x)."""
    if x <= 0:
        return 0
    r = math.isqrt(x)
    return 2 * sum(x // m for m in range(1, r + 1)) - r * r


def counting_fast(b: Flux, E) -> int:
    """N_b(E) in O(sqrt E) for integer or half-integer flux."""
    b = Flux.of(b)
    if b.generic or b.denominator not in (1, 2):
        raise UnsupportedFluxError("counting_fast needs an integer or half-integer flux")
    E = as_exact(E)
    if E <= 0:
        return 0
    if b.denominator == 1:
        # |k - b| runs over 1, 2, ... twice
        return 2 * divisor_summatory(math.floor(E / 4))
    # |k - b| runs over odd/2 twice: sum over odd m of floor(Y/m), Y = floor(E/2)
    y = math.floor(E / 2)
    return 2 * (divisor_summatory(y) - divisor_summatory(y // 2))


def weyl_reference(b: Flux, E: float) -> WeylReference:
    """Two-term Weyl asymptotics (E/2) log E + C_b E/2."""
    b = Flux.of(b)
    E = float(E)
    if E <= 1:
        raise ValueError("Weyl reference needs E > 1")
    g = specialfn.EULER_GAMMA
    const = g - 2.0 * math.log(2.0)
    if not b.is_integer:
        d = float(abs(b.nearest_integer - b.value))
        const += 1.0 / (2.0 * d) - 0.5 * (specialfn.digamma(1.0 - d) + specialfn.digamma(1.0 + d))
    return WeylReference(leading=0.5 * E * math.log(E), second=0.5 * E * const)


def multiplicity_bruteforce(b: Flux, lam) -> SpectralLine:
    """All admissible (n, k) with 4 n |k - b| == lam exactly."""
    b = Flux.of(b)
    if b.generic:
        raise UnsupportedFluxError("exact multiplicities need a rational flux")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    p, q = b.numerator, b.denominator
    key = lam * q / 4  # must equal n * |kq - p|
    indices = []
    if key.denominator == 1:
        key = key.numerator
        for m in _divisors(key):
            n = key // m
            for k_num in {p + m, p - m}:
                if k_num % q == 0:
                    indices.append(EigenIndex(n, k_num // q))
    return SpectralLine(lam, indices)


def _divisors(m: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


def multiplicity_divisor_formula(lam) -> int:
    """Closed-form multiplicity for integer flux: 2 d(lam/4), minus 2 when lam/4 is even.

    This is the published closed form, reported for comparison with
    multiplicity_bruteforce rather than assumed correct.
    """
    lam = Fraction(lam)
    t = lam / 4
    if lam <= 0 or t.denominator != 1:
        raise ValueError("lambda/4 must be a positive integer")
    t = t.numerator
    d = specialfn.divisor_count(t)
    return 2 * d if t % 2 == 1 else 2 * d - 2


@dataclass(frozen=True)
class MultiplicityComparison:
    lam: Fraction
    bruteforce: int
    divisor_formula: int

    @property
    def agree(self) -> bool:
        return self.bruteforce == self.divisor_formula


def multiplicity_comparison(lams: Iterable, b: Flux = Flux(0)) -> list[MultiplicityComparison]:
    return [
        MultiplicityComparison(Fraction(lam), multiplicity_bruteforce(b, lam).multiplicity,
                               multiplicity_divisor_formula(lam))
        for lam in lams
    ]


def level_spacing(b: Flux, k: int):
    """|lambda_{n,k} - lambda_{n-1,k}| = 4 |k - b|."""
    b = Flux.of(b)
    _check_mode(b, k)
    return 4 * b.distance(k)


def accumulation_count(b: Flux, k: int, x1, x2) -> int:
    """#{n >= 1 : lambda^b_{n,k} in [x1, x2]}."""
    b = Flux.of(b)
    _check_mode(b, k)
    x1, x2 = as_exact(x1), as_exact(x2)
    if not 0 <= x1 < x2:
        raise ValueError("need 0 <= x1 < x2")
    s = 4 * b.distance(k)
    lo = max(1, math.ceil(x1 / s))
    hi = math.floor(x2 / s)
    return max(0, hi - lo + 1)


@dataclass(frozen=True)
class DegenerationPair:
    b: Flux
    n: int
    within_half: bool

    @property
    def eigen_index(self) -> int:
        """Radial index whose eigenvalue equals the target lambda (n + 1)."""
        return self.n + 1


def degeneration_pair(lam, k: int, j: int) -> DegenerationPair:
    """n_j = 2j, b_j = k + lam / (4 (n_j + 1)), so that lambda^{b_j}_{n_j+1,k} = lam."""
    if j < 1:
        raise ValueError("j must be >= 1")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    n = 2 * j
    shift = lam / (4 * (n + 1))
    return DegenerationPair(Flux.of(k + shift), n, shift < Fraction(1, 2))


def n_of_b(lam, k: int, b: Flux) -> int:
    """n(b) = 2 ceil(lam / (8 |b - k|))."""
    b = Flux.of(b)
    d = b.distance(k)
    if d == 0:
        raise ExcludedModeError("n(b) is undefined at b = k")
    return 2 * math.ceil(as_exact(lam) / (8 * d))


def spectral_type(b: Flux) -> SpectralType:
    b = Flux.of(b)
    if b.is_integer:
        return SpectralType.AbsolutelyContinuousPlusEmbedded
    return SpectralType.PurePoint


def degeneration_sup_error(lam, k: int, j: int, x_grid=None) -> float:
    """sup_x |psi^{b_j}_{n_j+1,k}(x) - (sqrt(lam)/2) J_1(sqrt(lam) x)| on a grid (default [0, 6], 1201 points).

    The eigenfunction at index n_j + 1 is the one whose eigenvalue is exactly lam;
    with n_j even its Whittaker sign is +1, matching the Bessel limit. At x = 0 both
    sides vanish and the eigenfunction is taken as its limit 0.
    """
    pair = degeneration_pair(lam, k, j)
    x = np.linspace(0.0, 6.0, 1201) if x_grid is None else np.asarray(x_grid, dtype=float)
    kappa = float(pair.b.distance(k))
    psi = np.zeros_like(x)
    pos = x > 0
    psi[pos] = specialfn.whittaker_w_half(pair.eigen_index, kappa * x[pos] ** 2) / x[pos]
    target = generalized_eigenfunction(float(lam), x).values
    return float(np.max(np.abs(psi - target)))
