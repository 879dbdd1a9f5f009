"""Special functions for fractalqm."""

from .specfun import (
    ComplexValue,
    gamma_fn,
    assoc_laguerre,
    hermite,
    hermite_function,
    assoc_legendre,
    spherical_harmonic,
)

__all__ = [
    "ComplexValue",
    "gamma_fn",
    "assoc_laguerre",
    "hermite",
    "hermite_function",
    "assoc_legendre",
    "spherical_harmonic",
]
