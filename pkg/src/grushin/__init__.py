"""Spectral toolkit for Grushin-type almost-Riemannian structures.

Closed-form spectra, eigenfunctions, counting functions and Aharonov-Bohm effects on
the Grushin cylinder and hemisphere, self-adjointness verdicts for the conic
alpha-family, and finite-difference checks of all of it.
"""

from .flux import EigenfunctionSample, EigenIndex, Flux, SpectralLine, WeylReference

__version__ = "0.1.0"

__all__ = [
    "EigenfunctionSample",
    "EigenIndex",
    "Flux",
    "SpectralLine",
    "WeylReference",
    "__version__",
]
