"""Exception and warning types shared across the library.

Errors are raised for conditions the caller must handle (evaluation at a
pole, arguments outside a function's domain, iterations that fail to
converge).  Warnings flag results that were produced but deserve
scrutiny (loss of accuracy through cancellation, grid cells containing a
singularity).
"""
from __future__ import annotations


class PoleError(ValueError):
    """Evaluation was requested exactly at a pole."""


class DomainError(ValueError):
    """An argument lies outside the function's domain of definition."""


class ConvergenceError(RuntimeError):
    """An iteration exhausted its budget without meeting its tolerance."""


class DivergedError(ConvergenceError):
    """A root iteration left its trust region instead of converging."""


class BoundaryZeroError(RuntimeError):
    """A contour passes too close to a zero even after retries."""


class UndersampledError(RuntimeError):
    """Adaptive sampling hit its cap before phase steps became resolvable."""


class AccuracyWarning(RuntimeWarning):
    """The returned value is likely less accurate than the usual target."""


class DegenerateCellWarning(RuntimeWarning):
    """A grid cell contains a zero or pole of the traced field."""
