"""Exact and numerical checks for weight-3 polylogarithmic complexes and elliptic regulators."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    DegenerateInput,
    LabError,
    NonIntegralCoefficient,
    OddCoefficient,
    UnfactorableElement,
)
