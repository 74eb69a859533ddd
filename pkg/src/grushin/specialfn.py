"""Special functions needed by the closed-form spectra.

Everything here is plain float64. Scalar routines accept numpy arrays where it is
cheap to do so (Laguerre, Whittaker, terminating hypergeometric); the rest are
vectorised with ``np.vectorize`` at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, PoleError


@dataclass(frozen=True)
class MathConstants:
    euler_gamma: float


CONSTANTS = MathConstants(euler_gamma=0.57721566490153286060651209008240243)
EULER_GAMMA = CONSTANTS.euler_gamma

# digamma: recurse upward until x >= this, then the asymptotic series below is
# accurate to ~1e-16 (last retained term at x=10 is ~1e-15 relative to ln x).
DIGAMMA_ASYMPTOTIC_THRESHOLD = 10.0
# B_{2k} / (2k), k = 1..7
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# harmonic numbers: direct compensated summation up to this n, digamma beyond
HARMONIC_DIRECT_LIMIT = 10**6

# J_nu: power series below BESSEL_SERIES_SWITCH, Miller backward recurrence up to
# BESSEL_ASYMPTOTIC_SWITCH, Hankel asymptotic expansion beyond.
BESSEL_SERIES_SWITCH = 8.0
BESSEL_ASYMPTOTIC_SWITCH = 50.0


def digamma(x: float) -> float:
    """psi(x) = d/dx log Gamma(x) for real x not a nonpositive integer."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"digamma has a pole at {x}")
    if x < 0.0:
        # reflection keeps the upward recurrence away from the poles
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    shift = 0.0
    while x < DIGAMMA_ASYMPTOTIC_THRESHOLD:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_DIGAMMA_COEFFS):
        series = (series + c) * inv2
    return math.log(x) - 0.5 / x - series - shift


def harmonic(n: int) -> float:
    """H_n = sum_{m=1}^n 1/m."""
    if n < 1:
        raise ValueError("harmonic number needs n >= 1")
    if n <= HARMONIC_DIRECT_LIMIT:
        return math.fsum(1.0 / m for m in range(1, n + 1))
    return digamma(n + 1.0) + EULER_GAMMA


def laguerre(n: int, alpha: float, x):
    """Generalised Laguerre polynomial L_n^alpha(x) by the three-term recurrence in n."""
    if n < 0:
        raise ValueError("Laguerre degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def whittaker_w_half(n: int, z):
    """W_{n,1/2}(z) = (-1)^{n-1} z e^{-z/2} L_{n-1}^1(z) for integer n >= 1, z >= 0."""
    if n < 1:
        raise ValueError("Whittaker first index must be a positive integer")
    z = np.asarray(z, dtype=float)
    sign = 1.0 if n % 2 == 1 else -1.0
    out = sign * z * np.exp(-0.5 * z) * laguerre(n - 1, 1.0, z)
    return out if np.ndim(out) else float(out)


def _bessel_series(nu: int, x: float) -> float:
    h = 0.5 * x
    term = 1.0 if nu == 0 else h
    total = term
    q = -h * h
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + nu))
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total


def _bessel_miller(nu: int, x: float) -> float:
    start = 2 * ((int(1.5 * x) + 40) // 2)
    jp1, j = 0.0, 1e-30
    norm = 0.0
    j0 = j1 = 0.0
    for k in range(start, 0, -1):
        jm1 = (2.0 * k / x) * j - jp1
        jp1, j = j, jm1
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
        if abs(j) > 1e250:
            j *= 1e-250
            jp1 *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
        if k - 1 == 1:
            j1 = j
    j0 = j
    norm += j0
    return (j0 if nu == 0 else j1) / norm


def _bessel_asymptotic(nu: int, x: float) -> float:
    mu = 4.0 * nu * nu
    p, q = 1.0, 0.0
    term = 1.0
    for k in range(1, 60):
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
        if abs(term) < 1e-17:
            break
    chi = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def _bessel_scalar(nu: int, x: float) -> float:
    if x < 0.0:
        raise ValueError("bessel_j is defined here for x >= 0")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x < BESSEL_SERIES_SWITCH:
        return _bessel_series(nu, x)
    if x < BESSEL_ASYMPTOTIC_SWITCH:
        return _bessel_miller(nu, x)
    return _bessel_asymptotic(nu, x)


_bessel_vec = np.vectorize(_bessel_scalar, otypes=[float])


def bessel_j(nu: int, x):
    """Bessel function of the first kind J_nu(x), nu in {0, 1}, x >= 0."""
    if nu not in (0, 1):
        raise ValueError("only J_0 and J_1 are provided")
    if np.ndim(x):
        return _bessel_vec(nu, np.asarray(x, dtype=float))
    return _bessel_scalar(nu, float(x))


def pochhammer(a: float, l: int) -> float:
    """Rising factorial (a)_l = a (a+1) ... (a+l-1); raises OverflowError instead of returning inf."""
    if l < 0:
        raise ValueError("pochhammer length must be nonnegative")
    out = 1.0
    for i in range(l):
        out *= a + i
        if not math.isfinite(out):
            raise OverflowError(f"pochhammer({a}, {l}) overflows float64")
    return out


def hypergeom_terminating(m: int, b: float, c: float, z):
    """F(-m, b; c; z) as the finite sum sum_l (-m)_l (b)_l / ((c)_l l!) z^l."""
    if m < 0:
        raise ValueError("terminating series needs m >= 0")
    if c <= 0 and float(c).is_integer():
        raise ParameterError(f"c = {c} is a nonpositive integer")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for l in range(m):
        term = term * ((-m + l) * (b + l) / ((c + l) * (l + 1))) * z
        total = total + term
    if not np.all(np.isfinite(total)):
        raise OverflowError("terminating hypergeometric sum overflowed")
    return total if total.ndim else float(total)


def divisor_count(m: int) -> int:
    """Number of positive divisors d(m), by trial division up to sqrt(m)."""
    if m < 1:
        raise ValueError("divisor_count needs m >= 1")
    count = 0
    r = math.isqrt(m)
    for d in range(1, r + 1):
        if m % d == 0:
            count += 2
    if r * r == m:
        count -= 1
    return count
