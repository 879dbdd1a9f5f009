"""Figure data builders for fractalqm."""

from .figures import (
    HYDROGEN_PANELS,
    OSCILLATOR_PANELS,
    FIGURE_ALPHAS,
    SweepVariable,
    SweepSpec,
    StaircaseChoice,
    SpectrumTable,
    hydrogen_density_table,
    hydrogen_energy_table,
    oscillator_density_table,
    oscillator_ladder_table,
    oscillator_position_table,
    residual_table,
    staircase_table,
    evolution_table,
    trapezoid_area,
)

__all__ = [
    "HYDROGEN_PANELS",
    "OSCILLATOR_PANELS",
    "FIGURE_ALPHAS",
    "SweepVariable",
    "SweepSpec",
    "StaircaseChoice",
    "SpectrumTable",
    "hydrogen_density_table",
    "hydrogen_energy_table",
    "oscillator_density_table",
    "oscillator_ladder_table",
    "oscillator_position_table",
    "residual_table",
    "staircase_table",
    "evolution_table",
    "trapezoid_area",
]
