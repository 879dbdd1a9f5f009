"""
Figure data for fractalqm.

Each builder evaluates one family of curves over a sweep and returns a
DataTable whose column names and row order are those the CLI writes.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np
from scipy import integrate

from ..errors import ComputationError, ParameterError
from ..fcalc import FalphaConfig
from ..format import DataTable
from ..hydrogen import (
    ATOMIC_UNITS,
    FractalDims,
    IntegrationMeasure,
    PhysicalConstants,
    QuantumNumbers,
    RadialMode,
    energy_level,
    evolve_superposition,
    normalization_constant,
    radial_density,
    radial_residual,
)
from ..measure import Staircase, StaircaseBackend, make_staircase
from ..oscillator import (
    OscillatorParams,
    UNIT_PARAMS,
    density,
    energy,
    energy_position_form,
    evolve,
    tise_residual,
)


logger = logging.getLogger(__name__)

# (n, l) of the four hydrogen density panels.
HYDROGEN_PANELS: tuple[tuple[int, int], ...] = ((1, 0), (2, 1), (3, 0), (2, 0))
# Levels of the four oscillator density panels.
OSCILLATOR_PANELS: tuple[int, ...] = (0, 1, 2, 3)
FIGURE_ALPHAS: tuple[float, ...] = (0.6, 0.8, 1.0)


class SweepVariable(str, Enum):
    R = "r"
    X = "x"
    N = "n"
    ALPHA = "alpha"
    T = "t"


@dataclass(frozen=True)
class SweepSpec:
    """
    Evenly spaced samples of one variable.

    For ``n`` the sweep is the integer range start..stop inclusive and
    ``samples`` is ignored.
    """
    variable: SweepVariable
    start: float
    stop: float
    samples: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "variable", SweepVariable(self.variable))
        if not self.start < self.stop:
            raise ParameterError(f"sweep needs start < stop, got {self.start} >= {self.stop}")
        if self.variable is SweepVariable.N:
            if self.start != int(self.start) or self.stop != int(self.stop):
                raise ParameterError(f"n sweep needs integer bounds, got {self.start}..{self.stop}")
        elif self.samples < 2:
            raise ParameterError(f"sweep needs samples >= 2, got {self.samples}")

    def __len__(self) -> int:
        if self.variable is SweepVariable.N:
            return int(self.stop) - int(self.start) + 1
        return self.samples

    def values(self) -> np.ndarray:
        if self.variable is SweepVariable.N:
            return np.arange(int(self.start), int(self.stop) + 1)
        return np.linspace(self.start, self.stop, self.samples)


@dataclass(frozen=True)
class StaircaseChoice:
    """How to build the staircase for each alpha of a sweep."""
    backend: StaircaseBackend = StaircaseBackend.POWER_LAW
    depth: int = 10
    normalization: float = 1.0
    support: tuple[float, float] = (0.0, 1.0)

    def build(self, alpha: float) -> Staircase:
        return make_staircase(self.backend, alpha, self.support, self.depth, self.normalization)


POWER_LAW = StaircaseChoice()


class SpectrumTable(DataTable):
    """Energy levels by alpha, columns n, alpha, E_hartree, E_eV."""

    COLUMNS = ("n", "alpha", "E_hartree", "E_eV")

    def __init__(self) -> None:
        super().__init__(self.COLUMNS)

    def levels(self, alpha: float, unit: str = "E_hartree") -> np.ndarray:
        """Energies for one alpha in increasing n."""
        alphas = self.column("alpha")
        return self.column(unit)[np.isclose(alphas, alpha, rtol=0.0, atol=1e-12)]


def hydrogen_density_table(
    qn: QuantumNumbers,
    alphas: Sequence[float],
    sweep: SweepSpec,
    mode: RadialMode = RadialMode.SQUARED,
    consts: PhysicalConstants = ATOMIC_UNITS,
    A_nl: float = 1.0,
    staircase: StaircaseChoice = POWER_LAW,
    normalize: Optional[IntegrationMeasure] = None,
    cfg: FalphaConfig = FalphaConfig(),
) -> DataTable:
    """
    Radial density P over r for each alpha; columns r, alpha, P.

    With ``normalize`` set, A_nl is replaced per alpha by the
    normalization constant for that measure, integrated with ``cfg``.
    """
    table = DataTable(("r", "alpha", "P"))
    radii = sweep.values()
    for alpha in alphas:
        dims = FractalDims(alpha)
        s = staircase.build(alpha)
        amplitude = A_nl
        if normalize is not None:
            amplitude = normalization_constant(qn, dims, consts, s, IntegrationMeasure(normalize), cfg=cfg)
            logger.debug(f"A_nl for {qn} at alpha={alpha}: {amplitude}")
        for r in radii:
            table.append(float(r), alpha, radial_density(qn, dims, float(r), consts, amplitude, mode, s))
    logger.info(f"hydrogen density {qn}: {len(table)} rows")
    return table


def hydrogen_energy_table(
    levels: Sequence[int],
    alphas: Sequence[float],
    consts: PhysicalConstants = ATOMIC_UNITS,
    staircase: StaircaseChoice = POWER_LAW,
) -> SpectrumTable:
    """Energy levels for each alpha, alpha outer, n inner."""
    table = SpectrumTable()
    for alpha in alphas:
        dims = FractalDims(alpha)
        s = staircase.build(alpha)
        for n in levels:
            e = energy_level(int(n), dims, consts, s)
            table.append(int(n), alpha, consts.to_hartree(e), consts.to_ev(e))
    logger.info(f"hydrogen spectrum: {len(table)} rows")
    return table


def oscillator_density_table(
    levels: Sequence[int],
    alphas: Sequence[float],
    sweep: SweepSpec,
    params: OscillatorParams = UNIT_PARAMS,
    staircase: StaircaseChoice = POWER_LAW,
) -> DataTable:
    """Densities P over x; n outer, alpha, x inner; columns x, alpha, n, P."""
    table = DataTable(("x", "alpha", "n", "P"))
    xs = sweep.values()
    for n in levels:
        for alpha in alphas:
            dims = FractalDims(alpha)
            s = staircase.build(alpha)
            for x in xs:
                table.append(float(x), alpha, int(n), density(int(n), dims, float(x), params, s))
    logger.info(f"oscillator density: {len(table)} rows")
    return table


def oscillator_ladder_table(
    levels: Sequence[int],
    omegas: Sequence[float],
    mass: float = 1.0,
    hbar: float = 1.0,
) -> DataTable:
    """Ladder energies; omega_alpha outer, n inner."""
    table = DataTable(("n", "omega_alpha", "E"))
    for omega in omegas:
        params = OscillatorParams(mass=mass, omega_alpha=omega, hbar=hbar)
        for n in levels:
            table.append(int(n), omega, energy(int(n), params))
    return table


def oscillator_position_table(
    levels: Sequence[int],
    alphas: Sequence[float],
    sweep: SweepSpec,
    params: OscillatorParams = UNIT_PARAMS,
    staircase: StaircaseChoice = POWER_LAW,
) -> DataTable:
    """Position-form energies; n outer, alpha, x inner; columns n, alpha, x, E."""
    table = DataTable(("n", "alpha", "x", "E"))
    xs = sweep.values()
    for n in levels:
        for alpha in alphas:
            dims = FractalDims(alpha)
            s = staircase.build(alpha)
            for x in xs:
                table.append(int(n), alpha, float(x), energy_position_form(int(n), dims, float(x), params, s))
    return table


def residual_table(
    system: str,
    levels: Sequence[int],
    alphas: Sequence[float],
    points: Sequence[float],
    l: int = 0,
    consts: PhysicalConstants = ATOMIC_UNITS,
    params: OscillatorParams = UNIT_PARAMS,
    staircase: StaircaseChoice = POWER_LAW,
    cfg: FalphaConfig = FalphaConfig(),
) -> DataTable:
    """
    Equation residuals of the closed forms; n outer, alpha, x inner;
    columns x, alpha, n, residual.

    ``hydrogen`` checks the radial equation for (n, l) at radius x, ``ho``
    the oscillator equation for level n at position x.
    """
    if system not in ("hydrogen", "ho"):
        raise ParameterError(f"system must be 'hydrogen' or 'ho', got {system!r}")

    table = DataTable(("x", "alpha", "n", "residual"))
    for n in levels:
        for alpha in alphas:
            dims = FractalDims(alpha)
            s = staircase.build(alpha)
            for x in points:
                if system == "hydrogen":
                    value = radial_residual(QuantumNumbers(int(n), l), dims, float(x), consts, s, cfg)
                else:
                    value = tise_residual(int(n), dims, float(x), params, s, cfg)
                table.append(float(x), alpha, int(n), value)
    logger.info(f"{system} residuals: {len(table)} rows, step {cfg.step}")
    return table


def staircase_table(s: Staircase, sweep: SweepSpec) -> DataTable:
    """S(x) over the sweep; columns x, S."""
    table = DataTable(("x", "S"))
    xs = sweep.values()
    for x, value in zip(xs, s.evaluate_many(xs)):
        table.append(float(x), float(value))
    return table


Term = Union[tuple[complex, QuantumNumbers], tuple[complex, int]]


def evolution_table(
    system: str,
    terms: Sequence[Term],
    dims: FractalDims,
    point: Union[float, tuple[float, float, float]],
    times: Sequence[float],
    consts: PhysicalConstants = ATOMIC_UNITS,
    params: OscillatorParams = UNIT_PARAMS,
    s_space: Optional[Staircase] = None,
    s_time: Optional[Staircase] = None,
) -> DataTable:
    """
    Psi(point, t) of a superposition, t ascending; columns t, re, im, abs2.

    Args:
        system: ``hydrogen`` (terms carry QuantumNumbers, point is (r, theta, phi))
            or ``ho`` (terms carry levels, point is x)
        terms: (coefficient, state) pairs
        dims: Space and time exponents
        point: Evaluation point
        times: Times t >= 0
        consts: Constants for hydrogen
        params: Parameters for the oscillator
        s_space: Space staircase
        s_time: Time staircase
    """
    if system not in ("hydrogen", "ho"):
        raise ParameterError(f"system must be 'hydrogen' or 'ho', got {system!r}")
    if not terms:
        raise ParameterError("evolution needs at least one term")

    table = DataTable(("t", "re", "im", "abs2"))
    for t in sorted(float(t) for t in times):
        if system == "hydrogen":
            if isinstance(point, (int, float)):
                raise ParameterError("hydrogen evolution needs a point (r, theta, phi)")
            value = evolve_superposition(terms, dims, point, t, consts, s_space, s_time)  # type: ignore[arg-type]
        else:
            if not isinstance(point, (int, float)):
                raise ParameterError("oscillator evolution needs a scalar point x")
            value = evolve(terms, dims, float(point), t, params, s_space, s_time)  # type: ignore[arg-type]
        table.append(t, value.real, value.imag, abs(value) ** 2)
    return table


def trapezoid_area(table: DataTable, x: str, y: str, where: Optional[dict[str, float]] = None) -> float:
    """
    Trapezoid integral of column y over column x, optionally on the rows
    matching ``where``.
    """
    xs, ys = table.column(x), table.column(y)
    if where:
        mask = np.ones(len(table), dtype=bool)
        for name, value in where.items():
            mask &= np.isclose(table.column(name), value, rtol=0.0, atol=1e-12)
        xs, ys = xs[mask], ys[mask]
    if len(xs) < 2:
        raise ParameterError("trapezoid_area needs at least two rows")
    area = float(integrate.trapezoid(ys, xs))
    if not math.isfinite(area):
        raise ComputationError(f"area of {y} over {x} is not finite")
    return area
