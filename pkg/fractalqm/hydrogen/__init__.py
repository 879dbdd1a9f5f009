"""Fractal hydrogen atom for fractalqm."""

from .hydrogen import (
    EV_PER_HARTREE,
    ATOMIC_UNITS,
    QuantumNumbers,
    PhysicalConstants,
    FractalDims,
    RadialMode,
    IntegrationMeasure,
    radial_wavefunction,
    radial_density,
    orbital_1s,
    full_wavefunction,
    bohr_radius_level,
    energy_level,
    evolve_superposition,
    radial_residual,
    normalization_constant,
)

__all__ = [
    "EV_PER_HARTREE",
    "ATOMIC_UNITS",
    "QuantumNumbers",
    "PhysicalConstants",
    "FractalDims",
    "RadialMode",
    "IntegrationMeasure",
    "radial_wavefunction",
    "radial_density",
    "orbital_1s",
    "full_wavefunction",
    "bohr_radius_level",
    "energy_level",
    "evolve_superposition",
    "radial_residual",
    "normalization_constant",
]
