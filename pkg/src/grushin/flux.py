"""Aharonov-Bohm flux parameter and the records shared by the cylinder and sphere modules."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

Number = Union[int, Fraction, float]

_FLUX_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


@dataclass(frozen=True)
class Flux:
    """Flux b of the vector potential A_b = -i b dtheta.

    Rational fluxes are stored reduced (gcd(|numerator|, denominator) = 1) so the
    integer / rational / generic trichotomy is decidable. A generic flux carries a
    float standing in for an irrational value; it never compares equal to an integer.
    """

    numerator: int = 0
    denominator: int = 1
    generic: bool = False
    real: float | None = None

    def __post_init__(self):
        if self.generic:
            if self.real is None or not math.isfinite(self.real):
                raise ValueError("generic flux needs a finite real value")
            return
        if self.denominator <= 0:
            raise ValueError("flux denominator must be positive")
        g = math.gcd(abs(self.numerator), self.denominator)
        if g != 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def of(cls, value: Union[int, Fraction, str, "Flux"]) -> "Flux":
        """Build an exact flux from an int, Fraction, decimal string or 'P/Q'."""
        if isinstance(value, Flux):
            return value
        if isinstance(value, float):
            raise TypeError("use Flux.from_real for floating-point input")
        frac = Fraction(value)
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def parse(cls, text: str) -> "Flux":
        """Parse the strict command-line forms ``P`` and ``P/Q``."""
        m = _FLUX_RE.match(text)
        if m is None:
            raise ValueError(f"flux must be P or P/Q with integers, got {text!r}")
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) is not None else 1
        if q == 0:
            raise ValueError("flux denominator must be nonzero")
        return cls(p, q)

    @classmethod
    def from_real(cls, x: float) -> "Flux":
        """Generic (irrational surrogate) flux carried as a float."""
        return cls(generic=True, real=float(x))

    @property
    def is_integer(self) -> bool:
        return not self.generic and self.denominator == 1

    @property
    def value(self) -> Union[Fraction, float]:
        """Exact Fraction for rational flux, float for generic flux."""
        if self.generic:
            return self.real
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return float(self.value)

    @property
    def nearest_integer(self) -> int:
        """kappa, the integer closest to b (ties to even; only |kappa - b| is used downstream)."""
        return round(self.value)

    def distance(self, k: int) -> Union[Fraction, float]:
        """|k - b|, exact for rational flux."""
        return abs(k - self.value)

    def is_flux_mode(self, k: int) -> bool:
        return self.is_integer and k == self.numerator

    def __str__(self) -> str:
        if self.generic:
            return f"generic({self.real!r})"
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True, order=True)
class EigenIndex:
    """Quantum numbers: radial n >= 1 and Fourier mode k."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"radial index n must be >= 1, got {self.n}")


@dataclass
class SpectralLine:
    """An eigenvalue together with every index pair that produces it."""

    lam: Union[Fraction, float]
    indices: list[EigenIndex] = field(default_factory=list)

    def __post_init__(self):
        self.indices = sorted(self.indices, key=lambda ix: (ix.k, ix.n))

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass
class EigenfunctionSample:
    """Radial part of an eigenfunction on a grid; the angular phase e^{ik.} is kept as the integer k."""

    x_nodes: np.ndarray
    values: np.ndarray
    k: int = 0
    lam: Union[Fraction, float, None] = None

    def __post_init__(self):
        self.x_nodes = np.asarray(self.x_nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.x_nodes.shape != self.values.shape:
            raise ValueError("x_nodes and values must have the same length")
        if self.x_nodes.size > 1 and np.any(np.diff(self.x_nodes) <= 0):
            raise ValueError("x_nodes must be strictly increasing")


@dataclass(frozen=True)
class WeylReference:
    leading: float
    second: float


def as_exact(x: Union[Number, str]) -> Fraction:
    """Exact rational value of an int, Fraction, decimal string or (binary) float."""
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"non-finite value {x}")
    return Fraction(x)


def group_lines(pairs: Sequence[tuple[object, EigenIndex]], scale) -> list[SpectralLine]:
    """Group (exact key, index) pairs into lines sorted by eigenvalue = scale * key."""
    buckets: dict = {}
    for key, ix in pairs:
        buckets.setdefault(key, []).append(ix)
    return [SpectralLine(scale * key, ixs) for key, ixs in sorted(buckets.items())]
