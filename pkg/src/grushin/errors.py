"""Exception types shared across the package."""


class ExcludedModeError(ValueError):
    """Fourier mode k coincides with an integer flux b (k = b is not an eigenmode)."""


class UnsupportedFluxError(ValueError):
    """Flux outside the domain of a specialised routine."""


class PoleError(ValueError):
    """Argument sits on a pole of the function being evaluated."""


class ParameterError(ValueError):
    """Invalid parameter for a special function (e.g. nonpositive integer c)."""


class ResourceError(RuntimeError):
    """Requested enumeration exceeds the configured index cap."""


class ConvergenceError(RuntimeError):
    """Grid refinement failed to reduce the eigenvalue error estimate."""


class SingularSystemError(ValueError):
    """Least-squares normal equations are singular for the given samples."""


class NonUniformGridError(ValueError):
    """Finite-difference residual requested on a non-uniform grid."""
