"""Fractal harmonic oscillator for fractalqm."""

from .oscillator import (
    MAX_LEVEL,
    UNIT_PARAMS,
    OscillatorParams,
    eigenfunction,
    density,
    energy,
    energy_position_form,
    evolve,
    superposition_density,
    tise_residual,
)

__all__ = [
    "MAX_LEVEL",
    "UNIT_PARAMS",
    "OscillatorParams",
    "eigenfunction",
    "density",
    "energy",
    "energy_position_form",
    "evolve",
    "superposition_density",
    "tise_residual",
]
