from __future__ import annotations


class InfProbError(RuntimeError):
    """Base class for every failure raised by the engines."""

    exit_code: int = 1
    http_status: int = 500


class InputValidationError(InfProbError, ValueError):
    """Raised when an argument is outside the domain of an operation."""

    exit_code = 2
    http_status = 422


class ResourceCapExceededError(InfProbError):
    """Raised when a request exceeds a configured size cap."""

    exit_code = 3
    http_status = 413

    def __init__(self, what: str, value: int, cap: int, env_name: str) -> None:
        super().__init__(f"{what}={value} exceeds cap {cap} (raise {env_name} to allow it)")
        self.what = what
        self.value = value
        self.cap = cap
        self.env_name = env_name


class NumericFailureError(InfProbError):
    """Raised when a numerical procedure does not reach its tolerance."""

    exit_code = 4
    http_status = 500


class DegreeMismatchError(InputValidationError):
    """Raised when permutations or partitions live on different ground sets."""


class NonTransitiveError(InputValidationError):
    """Raised when two permutations do not generate a transitive group."""

    def __init__(self, orbits: list[tuple[int, ...]]) -> None:
        super().__init__(f"group action has {len(orbits)} orbits; genus is defined per orbit")
        self.orbits = orbits


class NotNonCrossingError(InputValidationError):
    """Raised when a non-crossing partition is required."""


class NotComparableError(InputValidationError):
    """Raised when p <= q fails in the refinement order."""


class RegimeMismatchError(InputValidationError, TypeError):
    """Raised when power series in z and in 1/z are combined."""


class InconsistentSeriesError(InputValidationError):
    """Raised when G and R (or g and r) do not satisfy the functional relation."""


class MissingLimitDataError(InputValidationError):
    """Raised when a functional lacks a word the computation needs."""


class NotAlternatingError(InputValidationError):
    """Raised when a word is not alternating or not centered."""


class ExtrapolationError(NumericFailureError):
    """Raised when Richardson extrapolation does not stabilize."""


class QuadratureError(NumericFailureError):
    """Raised when adaptive quadrature reports an unreliable result."""


class InsufficientSamplesError(InputValidationError):
    """Raised when a Monte-Carlo request has too few samples."""
