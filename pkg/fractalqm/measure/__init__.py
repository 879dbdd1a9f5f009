"""Mass, dimension and staircase functions for fractalqm."""

from .measure import (
    MassEstimate,
    DimensionTrial,
    DimensionReport,
    coarse_mass,
    mass_function,
    default_mesh_schedule,
    gamma_dimension,
    gamma_dimension_report,
    StaircaseBackend,
    Staircase,
    PowerLawStaircase,
    CantorStaircase,
    NumericStaircase,
    staircase_eval,
    make_staircase,
)

__all__ = [
    "MassEstimate",
    "DimensionTrial",
    "DimensionReport",
    "coarse_mass",
    "mass_function",
    "default_mesh_schedule",
    "gamma_dimension",
    "gamma_dimension_report",
    "StaircaseBackend",
    "Staircase",
    "PowerLawStaircase",
    "CantorStaircase",
    "NumericStaircase",
    "staircase_eval",
    "make_staircase",
]
