"""
fractalqm - calculus on fractal sets and fractal quantum mechanics

Mass functions, gamma-dimension and integral staircases of Cantor-type
sets, the F^alpha-calculus built on them, and the fractal hydrogen atom
and harmonic oscillator.
"""

__version__ = "0.1.0"
__author__ = "fractalqm contributors"

# Fractal calculus
from .errors import (
    FractalQMError,
    ParameterError,
    ComputationError,
    DerivativeUndefinedError,
    DataFileError,
)
from .fractalset import CantorSpec, IntervalUnion, build_cantor, flag, contains
from .measure import (
    coarse_mass,
    mass_function,
    gamma_dimension,
    Staircase,
    StaircaseBackend,
    make_staircase,
    staircase_eval,
)
from .fcalc import FalphaConfig, falpha_derivative, falpha_integral
from .specfun import gamma_fn, assoc_laguerre, hermite, spherical_harmonic

# Quantum systems
from .hydrogen import (
    QuantumNumbers,
    PhysicalConstants,
    FractalDims,
    RadialMode,
    radial_wavefunction,
    radial_density,
    energy_level,
)
from .oscillator import OscillatorParams, eigenfunction, density, energy

# Output
from .format import DataTable, OutputFormat, read_table
from .config import Config, RunConfig

__all__ = [
    # Errors
    "FractalQMError",
    "ParameterError",
    "ComputationError",
    "DerivativeUndefinedError",
    "DataFileError",
    # Fractal calculus
    "CantorSpec",
    "IntervalUnion",
    "build_cantor",
    "flag",
    "contains",
    "coarse_mass",
    "mass_function",
    "gamma_dimension",
    "Staircase",
    "StaircaseBackend",
    "make_staircase",
    "staircase_eval",
    "FalphaConfig",
    "falpha_derivative",
    "falpha_integral",
    "gamma_fn",
    "assoc_laguerre",
    "hermite",
    "spherical_harmonic",
    # Quantum systems
    "QuantumNumbers",
    "PhysicalConstants",
    "FractalDims",
    "RadialMode",
    "radial_wavefunction",
    "radial_density",
    "energy_level",
    "OscillatorParams",
    "eigenfunction",
    "density",
    "energy",
    # Output
    "DataTable",
    "OutputFormat",
    "read_table",
    "Config",
    "RunConfig",
]
