"""Self-adjointness and spectral type for g_alpha = dx^2 + x^{-2 alpha} dtheta^2 with flux b.

Per Fourier mode the operator is d_x^2 - (alpha/x) d_x - |x|^{2 alpha} (b - k)^2.
Endpoints follow the closed/open intervals alpha >= 1, alpha <= -3, -3 < alpha <= -1,
-1 < alpha < 1 exactly, using plain float comparisons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .flux import Flux


class ConicSpectralType(enum.Enum):
    PurelyDiscrete = "PurelyDiscrete"
    ACPlusEmbeddedDiscrete = "ACPlusEmbeddedDiscrete"
    OutOfScope = "OutOfScope"


NOTE_ALPHA_MINUS_ONE = (
    "alpha = -1 on R_+ x S^1 is the usual Aharonov-Bohm Laplacian in polar coordinates"
)
NOTE_ALPHA_MINUS_HALF = (
    "alpha = -1/2: discrete spectrum accumulating at 0 together with absolutely continuous "
    "spectrum [0, inf); for non-integer b a further family of eigenvalues accumulates at 0"
)
NOTE_NONINTEGER_SMALL_ALPHA = (
    "non-integer flux with |alpha| < 1: the mode verdicts of the b = 0 classification are "
    "carried over; essential self-adjointness for |alpha| >= 1 is a sufficient condition"
)


@dataclass(frozen=True)
class ConicStructure:
    alpha: float
    flux: Flux = Flux(0)


@dataclass
class ClassificationRecord:
    alpha: float
    flux: Flux
    full_operator_esa: bool
    mode_verdicts: dict[int, bool]
    spectral_type: ConicSpectralType
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "flux": str(self.flux),
            "full_operator_esa": self.full_operator_esa,
            "mode_verdicts": {str(k): v for k, v in sorted(self.mode_verdicts.items())},
            "spectral_type": self.spectral_type.value,
            "notes": list(self.notes),
        }


def is_full_operator_esa(alpha: float, b: Flux) -> bool:
    b = Flux.of(b)
    if b.is_integer:
        return alpha >= 1 or alpha <= -3
    return abs(alpha) >= 1


def is_mode_esa(alpha: float, k: int, b: Flux) -> bool:
    b = Flux.of(b)
    if alpha >= 1 or alpha <= -3:
        return True
    if -3 < alpha <= -1:
        return not b.is_flux_mode(k)
    return False


def spectral_type(alpha: float, b: Flux) -> tuple[ConicSpectralType, list[str]]:
    b = Flux.of(b)
    if alpha <= 0:
        notes = ["spectral type is only classified for alpha > 0"]
        if alpha == -1:
            notes.append(NOTE_ALPHA_MINUS_ONE)
        if alpha == -0.5:
            notes.append(NOTE_ALPHA_MINUS_HALF)
        return ConicSpectralType.OutOfScope, notes
    if b.is_integer:
        return ConicSpectralType.ACPlusEmbeddedDiscrete, []
    return ConicSpectralType.PurelyDiscrete, []


def classify(alpha: float, b: Flux, modes: Iterable[int] = range(-20, 21)) -> ClassificationRecord:
    b = Flux.of(b)
    stype, notes = spectral_type(alpha, b)
    if not b.is_integer and abs(alpha) < 1:
        notes.append(NOTE_NONINTEGER_SMALL_ALPHA)
    return ClassificationRecord(
        alpha=alpha,
        flux=b,
        full_operator_esa=is_full_operator_esa(alpha, b),
        mode_verdicts={k: is_mode_esa(alpha, k, b) for k in modes},
        spectral_type=stype,
        notes=notes,
    )
