"""Exception types and the tagged non-finite value used at exact poles."""

from __future__ import annotations

import numpy as np

__all__ = [
    "CavityResponseError",
    "ConfigError",
    "SolverError",
    "OracleError",
    "InstabilityError",
    "DegenerateSpinError",
    "SingularValue",
    "is_singular",
]


class CavityResponseError(Exception):
    """Base class for all package errors."""


class ConfigError(CavityResponseError, ValueError):
    """Invalid or unknown run-configuration content."""


class SolverError(CavityResponseError, RuntimeError):
    """A mean-field or root solve did not converge.

    Attributes
    ----------
    diagnostics : dict
        Solver-specific information (parameters, residuals, iterates).
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class OracleError(SolverError):
    """The bosonization oracle failed to produce a solution."""


class InstabilityError(CavityResponseError, ArithmeticError):
    """A quadratic form has an imaginary normal mode (wrong phase)."""


class DegenerateSpinError(CavityResponseError, ValueError):
    """A free spin with vanishing gap has no finite susceptibility."""


class SingularValue(complex):
    """Non-finite complex number returned when evaluating exactly on a pole.

    Behaves like ``complex(inf, nan)`` in arithmetic but carries a
    ``reason`` string so callers can tell a pole hit from a genuine
    numerical blow-up.
    """

    reason: str

    def __new__(cls, reason: str = "on-resonance singularity"):
        obj = super().__new__(cls, complex(np.inf, np.nan))
        obj.reason = reason
        return obj

    def __repr__(self) -> str:
        return f"SingularValue({self.reason!r})"


def is_singular(value) -> np.ndarray | bool:
    """True where ``value`` is non-finite (elementwise for arrays)."""
    out = ~np.isfinite(np.asarray(value))
    return bool(out) if out.ndim == 0 else out
