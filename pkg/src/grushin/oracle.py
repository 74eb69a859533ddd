"""Independent numerical checks of the closed forms.

Finite-difference discretisations of the per-mode operators, solved with a
Sturm-sequence bisection for the lowest eigenvalues; central-difference ODE
residuals for sampled eigenfunctions; and a two-term least-squares Weyl fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numba
import numpy as np

from .errors import ConvergenceError, NonUniformGridError, SingularSystemError
from .flux import EigenfunctionSample


@dataclass(frozen=True)
class Grid1D:
    left: float
    right: float
    points: int

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("grid needs left < right")
        if self.points < 3:
            raise ValueError("grid needs at least 3 points")

    @property
    def spacing(self) -> float:
        return (self.right - self.left) / (self.points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.left, self.right, self.points)

    def coarsened(self) -> "Grid1D":
        """Roughly doubled spacing on the same interval."""
        return Grid1D(self.left, self.right, (self.points - 1) // 2 + 1)

    def refined(self) -> "Grid1D":
        """Exactly halved spacing on the same interval."""
        return Grid1D(self.left, self.right, 2 * self.points - 1)


@dataclass
class TridiagonalOperator:
    """Symmetric tridiagonal A with diagonal mass M: A u = lam M u."""

    diagonal: np.ndarray
    offdiagonal: np.ndarray
    mass_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        self.diagonal = np.asarray(self.diagonal, dtype=float)
        self.offdiagonal = np.asarray(self.offdiagonal, dtype=float)
        if self.offdiagonal.size != self.diagonal.size - 1:
            raise ValueError("offdiagonal must be one shorter than diagonal")
        if self.mass_weights is None:
            self.mass_weights = np.ones_like(self.diagonal)
        self.mass_weights = np.asarray(self.mass_weights, dtype=float)
        if self.mass_weights.shape != self.diagonal.shape or np.any(self.mass_weights <= 0):
            raise ValueError("mass weights must be positive and match the diagonal")

    def standard_form(self) -> tuple[np.ndarray, np.ndarray]:
        """M^{-1/2} A M^{-1/2}, still symmetric tridiagonal."""
        s = 1.0 / np.sqrt(self.mass_weights)
        return self.diagonal * s * s, self.offdiagonal * s[:-1] * s[1:]


@dataclass
class EigResult:
    eigenvalues: np.ndarray
    grid: Grid1D
    refinement_error_estimates: np.ndarray = field(default_factory=lambda: np.zeros(0))


@numba.njit(cache=True)
def _sturm_count(d, e2, x, pivmin):
    """Number of eigenvalues of the tridiagonal (d, e) strictly below x."""
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, d.size):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect_lowest(d, e, m):
    n = d.size
    e2 = e * e
    lo = np.inf
    hi = -np.inf
    for i in range(n):
        r = 0.0
        if i > 0:
            r += abs(e[i - 1])
        if i < n - 1:
            r += abs(e[i])
        lo = min(lo, d[i] - r)
        hi = max(hi, d[i] + r)
    emax2 = 1.0
    for i in range(n - 1):
        emax2 = max(emax2, e2[i])
    pivmin = 2.2250738585072014e-308 * emax2
    eps = 2.220446049250313e-16
    out = np.empty(m)
    left = lo
    for k in range(m):
        a = left
        b = hi
        while b - a > 2.0 * eps * max(abs(a), abs(b)) + pivmin:
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if _sturm_count(d, e2, mid, pivmin) > k:
                b = mid
            else:
                a = mid
        out[k] = 0.5 * (a + b)
        left = a
    return out


def tridiagonal_lowest_eigenvalues(diagonal, offdiagonal, m: int) -> np.ndarray:
    """Lowest m eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence bisection."""
    d = np.ascontiguousarray(diagonal, dtype=float)
    e = np.ascontiguousarray(offdiagonal, dtype=float)
    if not 1 <= m <= d.size:
        raise ValueError("need 1 <= m <= matrix size")
    return _bisect_lowest(d, e, m)


def solve_lowest(op: TridiagonalOperator, m: int) -> np.ndarray:
    d, e = op.standard_form()
    return tridiagonal_lowest_eigenvalues(d, e, m)


def cylinder_mode_operator(kappa: float, grid: Grid1D) -> TridiagonalOperator:
    """-u'' + (3/4) u / x^2 + kappa^2 x^2 u on interior nodes, Dirichlet at both ends."""
    if grid.left <= 0:
        raise ValueError("cylinder grid must start at x > 0")
    x = grid.nodes()[1:-1]
    h2 = grid.spacing ** 2
    diag = 2.0 / h2 + 0.75 / (x * x) + kappa * kappa * x * x
    off = np.full(x.size - 1, -1.0 / h2)
    return TridiagonalOperator(diag, off)


def _cot(x):
    return np.cos(x) / np.sin(x)


def sphere_mode_operator(kappa: float, grid: Grid1D) -> TridiagonalOperator:
    """-(w u')' + w kappa^2 tan^2(x) u = lam w u with w = cot x.

    Dirichlet at both truncated ends for kappa > 0. For kappa = 0 the pole end
    (right) gets the natural condition instead, since the regular solution there
    tends to a constant rather than vanishing.
    """
    if grid.left <= 0 or grid.right >= math.pi / 2:
        raise ValueError("sphere grid must lie strictly inside (0, pi/2)")
    x = grid.nodes()
    h2 = grid.spacing ** 2
    w_half = _cot(0.5 * (x[:-1] + x[1:]))
    pot = lambda t: _cot(t) * kappa * kappa * np.tan(t) ** 2
    if kappa > 0:
        xi = x[1:-1]
        diag = (w_half[:-1] + w_half[1:]) / h2 + pot(xi)
        off = -w_half[1:-1] / h2
        mass = _cot(xi)
    else:
        xi = x[1:]
        flux_right = np.append(w_half[1:], 0.0)
        diag = (w_half + flux_right) / h2
        off = -w_half[1:] / h2
        mass = _cot(xi)
        # half control volume at the natural end
        mass[-1] *= 0.5
    return TridiagonalOperator(diag, off, mass)


def _refined_solve(build: Callable[[Grid1D], TridiagonalOperator], grid: Grid1D, m: int) -> EigResult:
    fine = solve_lowest(build(grid), m)
    mid_grid = grid.coarsened()
    mid = solve_lowest(build(mid_grid), m)
    coarse = solve_lowest(build(mid_grid.coarsened()), m)
    d_fine = np.abs(fine - mid)
    d_coarse = np.abs(mid - coarse)
    floor = 1e-12 * np.abs(fine)
    if np.any((d_fine > d_coarse) & (d_fine > floor)):
        raise ConvergenceError(f"refinement did not reduce the eigenvalue change: {d_coarse} -> {d_fine}")
    h, H = grid.spacing, mid_grid.spacing
    est = d_fine * h * h / (H * H - h * h)
    return EigResult(fine, grid, est)


def _check_count(grid: Grid1D, m: int):
    if m < 1 or m > grid.points / 10:
        raise ValueError("need 1 <= m <= points/10")


def default_cylinder_grid(kappa: float, m: int, points: int = 20000) -> Grid1D:
    """[1e-4, X] with X >= 30 and past the m-th turning point by a 1e-16 Gaussian decay margin."""
    turning2 = 4.0 * m / kappa
    X = max(30.0, math.sqrt(turning2 + 2.0 * math.log(1e16) / kappa))
    spacing = (30.0 - 1e-4) / (points - 1)
    return Grid1D(1e-4, X, max(points, int(math.ceil((X - 1e-4) / spacing)) + 1))


def default_sphere_grid(points: int = 20000, eps: float = 1e-3) -> Grid1D:
    return Grid1D(eps, math.pi / 2 - eps, points)


def fd_eigs_cylinder_mode(kappa: float, grid: Optional[Grid1D] = None, m: int = 5) -> EigResult:
    """Lowest m eigenvalues of -d^2/dx^2 + (3/4)/x^2 + kappa^2 x^2 (targets 4 kappa n)."""
    if kappa <= 0:
        raise ValueError("cylinder mode oracle needs kappa > 0")
    grid = grid or default_cylinder_grid(kappa, m)
    _check_count(grid, m)
    return _refined_solve(lambda g: cylinder_mode_operator(kappa, g), grid, m)


def fd_eigs_sphere_mode(kappa: float, grid: Optional[Grid1D] = None, m: int = 4) -> EigResult:
    """Lowest m eigenvalues of the hemisphere mode operator (targets 4 n (n + kappa))."""
    if kappa < 0:
        raise ValueError("sphere mode oracle needs kappa >= 0")
    grid = grid or default_sphere_grid()
    _check_count(grid, m)
    return _refined_solve(lambda g: sphere_mode_operator(kappa, g), grid, m)


@dataclass(frozen=True)
class ModeCoefficients:
    """u'' + first_order(x) u' + potential(x) u + lam u = 0."""

    potential: Callable[[np.ndarray], np.ndarray]
    first_order: Optional[Callable[[np.ndarray], np.ndarray]] = None


def cylinder_coefficients(kappa: float) -> ModeCoefficients:
    """Laplace-Beltrami mode operator d^2 - (1/x) d - kappa^2 x^2, solved by W(kappa x^2)."""
    return ModeCoefficients(potential=lambda x: -(kappa * x) ** 2, first_order=lambda x: -1.0 / x)


def cylinder_quotient_coefficients(kappa: float) -> ModeCoefficients:
    """The same operator conjugated by multiplication with x: d^2 + (1/x) d - 1/x^2 - kappa^2 x^2.

    This is the equation satisfied by W(kappa x^2)/x, the form returned by
    cylinder.eigenfunction_radial, and by its Bessel limit J_1.
    """
    return ModeCoefficients(potential=lambda x: -1.0 / (x * x) - (kappa * x) ** 2, first_order=lambda x: 1.0 / x)


def cylinder_schrodinger_coefficients(kappa: float) -> ModeCoefficients:
    return ModeCoefficients(potential=lambda x: -0.75 / (x * x) - (kappa * x) ** 2)


def sphere_coefficients(kappa: float) -> ModeCoefficients:
    return ModeCoefficients(
        potential=lambda x: -(kappa * np.tan(x)) ** 2,
        first_order=lambda x: -1.0 / (np.sin(x) * np.cos(x)),
    )


def ode_residual(coeffs: ModeCoefficients, sample: EigenfunctionSample, lam: float) -> float:
    """max_i |(D2 + p D1 + V + lam) psi|_i / (lam * max|psi|) over interior nodes."""
    x, psi = sample.x_nodes, sample.values
    if x.size < 7:
        raise ValueError("need at least 5 interior nodes")
    dx = np.diff(x)
    h = dx.mean()
    if np.max(np.abs(dx - h)) > 1e-9 * abs(h) + 1e-12 * np.max(np.abs(x)):
        raise NonUniformGridError("ode_residual needs a uniform grid")
    lam = float(lam)
    xi = x[1:-1]
    res = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / (h * h)
    if coeffs.first_order is not None:
        res = res + coeffs.first_order(xi) * (psi[2:] - psi[:-2]) / (2.0 * h)
    res = res + (coeffs.potential(xi) + lam) * psi[1:-1]
    scale = lam * np.max(np.abs(psi))
    return float(np.max(np.abs(res)) / scale)


@dataclass(frozen=True)
class WeylFit:
    a: float
    c: float
    rms: float


def weyl_fit(samples: Sequence[tuple[float, int]]) -> WeylFit:
    """Fit N ~ a E log E + c E.

    Rows are divided by E before solving the 2x2 normal equations, so each sample
    weighs by its relative error rather than by its size.
    """
    if len(samples) < 3:
        raise ValueError("weyl_fit needs at least 3 samples")
    E = np.array([s[0] for s in samples], dtype=float)
    N = np.array([s[1] for s in samples], dtype=float)
    if np.any(E <= 1):
        raise ValueError("sample energies must exceed 1")
    if np.unique(E).size != E.size:
        raise ValueError("sample energies must be distinct")
    L = np.log(E)
    y = N / E
    s_ll, s_l, s_1 = float(L @ L), float(L.sum()), float(E.size)
    det = s_ll * s_1 - s_l * s_l
    if det <= 1e-12 * s_ll * s_1:
        raise SingularSystemError("degenerate sample set")
    r1, r2 = float(L @ y), float(y.sum())
    a = (r1 * s_1 - s_l * r2) / det
    c = (s_ll * r2 - s_l * r1) / det
    model = a * E * L + c * E
    rms = float(np.sqrt(np.mean(((model - N) / np.maximum(np.abs(N), 1.0)) ** 2)))
    return WeylFit(a, c, rms)


@dataclass(frozen=True)
class OracleConfig:
    """Tolerances and grids used by the verification commands and the acceptance suite."""

    cylinder_rel_tol: float = 0.005
    sphere_rel_tol: float = 0.01
    refinement_ratio: tuple[float, float] = (3.0, 5.0)
    residual_tol: float = 1e-5
    weyl_coefficient_tol: float = 0.02
    cylinder_grid: Grid1D = Grid1D(1e-4, 30.0, 20000)
    sphere_grid: Grid1D = Grid1D(1e-3, math.pi / 2 - 1e-3, 20000)
    cylinder_residual_grid: Grid1D = Grid1D(0.05, 6.0, 12001)
    sphere_residual_grid: Grid1D = Grid1D(0.1, 1.4, 13001)
    limit_sup_bound: float = 1e-2


DEFAULT_CONFIG = OracleConfig()
