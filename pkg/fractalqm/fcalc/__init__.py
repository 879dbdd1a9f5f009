"""F^alpha-calculus for fractalqm."""

from .fcalc import FalphaConfig, falpha_derivative, falpha_integral

__all__ = [
    "FalphaConfig",
    "falpha_derivative",
    "falpha_integral",
]
