"""
Fractal hydrogen atom.

Handles:
- Radial and full wavefunctions, radial densities and the 1s orbital
- Average radii and fractal energy levels
- Time evolution of superpositions in fractal time
- Residual of the fractal radial equation and numeric normalization

Every quantity is expressed in the unit system of a PhysicalConstants
record; atomic units are the default.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from ..errors import ComputationError, ParameterError
from ..fcalc import FalphaConfig, falpha_derivative, falpha_integral
from ..measure import PowerLawStaircase, Staircase
from ..specfun import ComplexValue, assoc_laguerre, spherical_harmonic


logger = logging.getLogger(__name__)

EV_PER_HARTREE = 27.211386245988
# Staircases whose alpha differs from the requested one by more than this are rejected.
ALPHA_MATCH_TOL = 1e-9
# Radial cut-off of the default normalization domain, in units of n*S(a0).
NORMALIZATION_SPAN = 60.0


@dataclass(frozen=True)
class QuantumNumbers:
    """Principal, angular and magnetic quantum numbers."""
    n: int
    l: int = 0
    m: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ParameterError(f"l must satisfy 0 <= l <= n-1, got n={self.n}, l={self.l}")
        if abs(self.m) > self.l:
            raise ParameterError(f"m must satisfy |m| <= l, got l={self.l}, m={self.m}")

    def __str__(self) -> str:
        return f"({self.n},{self.l},{self.m})"


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Physical constants in one unit system.

    The energy unit is whatever hbar, electron_mass and the Coulomb coupling
    imply: Hartree in atomic units, joule in SI.
    """
    hbar: float = 1.0
    electron_mass: float = 1.0
    charge: float = 1.0
    vacuum_permittivity: float = 1.0 / (4.0 * math.pi)
    bohr_radius: float = 1.0
    ev_per_hartree: float = EV_PER_HARTREE
    unit_system: str = "atomic"

    def __post_init__(self) -> None:
        for name in ("hbar", "electron_mass", "charge", "vacuum_permittivity", "bohr_radius", "ev_per_hartree"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be a positive number, got {value}")

    @classmethod
    def atomic(cls) -> "PhysicalConstants":
        """hbar = m_e = e = 4*pi*eps0 = a0 = 1."""
        return cls()

    @classmethod
    def si(cls) -> "PhysicalConstants":
        """CODATA 2018 values in SI units."""
        return cls(
            hbar=1.054571817e-34,
            electron_mass=9.1093837015e-31,
            charge=1.602176634e-19,
            vacuum_permittivity=8.8541878128e-12,
            bohr_radius=5.29177210903e-11,
            unit_system="si",
        )

    @property
    def coulomb_coupling(self) -> float:
        """e^2 / (4 pi eps0)."""
        return self.charge ** 2 / (4.0 * math.pi * self.vacuum_permittivity)

    @property
    def hartree(self) -> float:
        """One Hartree, m k^2 / hbar^2, in the energy unit of this system."""
        return self.electron_mass * self.coulomb_coupling ** 2 / self.hbar ** 2

    def to_hartree(self, energy: float) -> float:
        return energy / self.hartree

    def to_ev(self, energy: float) -> float:
        return self.to_hartree(energy) * self.ev_per_hartree


@dataclass(frozen=True)
class FractalDims:
    """Space dimension exponent alpha and time dimension exponent beta."""
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ParameterError(f"{name} must be in (0, 1], got {value}")


class RadialMode(str, Enum):
    """How the radial density is formed."""
    SQUARED = "squared"
    PAPER_LITERAL = "paper_literal"


class IntegrationMeasure(str, Enum):
    """Measure used to normalize radial wavefunctions."""
    FRACTAL = "fractal"
    VOLUME = "volume"
    PLAIN = "plain"


ATOMIC_UNITS = PhysicalConstants.atomic()


def _space_staircase(dims: FractalDims, s: Optional[Staircase]) -> Staircase:
    if s is None:
        return PowerLawStaircase(dims.alpha)
    if abs(s.alpha - dims.alpha) > ALPHA_MATCH_TOL:
        raise ParameterError(f"staircase {s!r} does not match alpha={dims.alpha}")
    return s


def _time_staircase(dims: FractalDims, s: Optional[Staircase]) -> Staircase:
    if s is None:
        return PowerLawStaircase(dims.beta)
    if abs(s.alpha - dims.beta) > ALPHA_MATCH_TOL:
        raise ParameterError(f"time staircase {s!r} does not match beta={dims.beta}")
    return s


def _check_radius(r: float) -> None:
    if not (math.isfinite(r) and r >= 0):
        raise ParameterError(f"r must be a finite number >= 0, got {r}")


def _radial_parts(qn: QuantumNumbers, r: float, consts: PhysicalConstants, s: Staircase) -> tuple[float, float, float]:
    """Prefactor (without A), scaled argument S(r)/(n S(a0)) and Laguerre factor."""
    _check_radius(r)
    scale = qn.n * s(consts.bohr_radius)
    if scale <= 0:
        raise ComputationError(f"staircase vanishes at the Bohr radius {consts.bohr_radius}")
    rho = s(r) / scale
    prefactor = (2.0 / scale) ** (qn.l + 1)
    laguerre = assoc_laguerre(qn.n - qn.l - 1, 2 * qn.l + 1, 2.0 * rho)
    return prefactor, rho, laguerre


def radial_wavefunction(
    qn: QuantumNumbers,
    dims: FractalDims,
    r: float,
    consts: PhysicalConstants = ATOMIC_UNITS,
    A_nl: float = 1.0,
    s: Optional[Staircase] = None,
) -> float:
    """
    Fractal radial wavefunction R_nl^alpha(r).

    Args:
        qn: Quantum numbers (m is ignored)
        dims: Fractal dimensions, alpha selects the default power-law staircase
        r: Radius, r >= 0
        consts: Physical constants
        A_nl: Amplitude
        s: Space staircase, defaults to S(r) = r^alpha

    Returns:
        A (2/(n S(a0)))^(l+1) exp(-S(r)/(n S(a0))) L_{n-l-1}^{2l+1}(2 S(r)/(n S(a0)))
    """
    s = _space_staircase(dims, s)
    prefactor, rho, laguerre = _radial_parts(qn, r, consts, s)
    return A_nl * prefactor * math.exp(-rho) * laguerre


def radial_density(
    qn: QuantumNumbers,
    dims: FractalDims,
    r: float,
    consts: PhysicalConstants = ATOMIC_UNITS,
    A_nl: float = 1.0,
    mode: RadialMode = RadialMode.SQUARED,
    s: Optional[Staircase] = None,
) -> float:
    """
    Radial probability density.

    ``squared`` squares the radial wavefunction; ``paper_literal`` keeps the
    exponential factor unsquared, exp(-S(r)/(n S(a0))).
    """
    mode = RadialMode(mode)
    if mode is RadialMode.SQUARED:
        return radial_wavefunction(qn, dims, r, consts, A_nl, s) ** 2

    s = _space_staircase(dims, s)
    prefactor, rho, laguerre = _radial_parts(qn, r, consts, s)
    return abs(A_nl) ** 2 * prefactor ** 2 * math.exp(-rho) * abs(laguerre) ** 2


def orbital_1s(dims: FractalDims, r: float, consts: PhysicalConstants = ATOMIC_UNITS) -> float:
    """
    1s orbital in its power-law form,
    (2/sqrt(4 pi)) (1/a0^(3 alpha))^(1/2) exp(-r^alpha / a0^(3 alpha)).
    """
    _check_radius(r)
    a_cubed = consts.bohr_radius ** (3.0 * dims.alpha)
    return 2.0 / math.sqrt(4.0 * math.pi) * math.sqrt(1.0 / a_cubed) * math.exp(-(r ** dims.alpha) / a_cubed)


def full_wavefunction(
    qn: QuantumNumbers,
    dims: FractalDims,
    r: float,
    theta: float,
    phi: float,
    consts: PhysicalConstants = ATOMIC_UNITS,
    A_nl: float = 1.0,
    s: Optional[Staircase] = None,
) -> ComplexValue:
    """Radial wavefunction times Y_lm(theta, phi)."""
    if not 0 <= phi < 2.0 * math.pi:
        raise ParameterError(f"phi must be in [0, 2*pi), got {phi}")
    radial = radial_wavefunction(qn, dims, r, consts, A_nl, s)
    return radial * spherical_harmonic(qn.l, qn.m, theta, phi)


def bohr_radius_level(n: int, consts: PhysicalConstants = ATOMIC_UNITS) -> float:
    """Average radius r_n = n^2 hbar^2 / (m k) of level n."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return n ** 2 * consts.hbar ** 2 / (consts.electron_mass * consts.coulomb_coupling)


def energy_level(
    n: int,
    dims: FractalDims,
    consts: PhysicalConstants = ATOMIC_UNITS,
    s: Optional[Staircase] = None,
) -> float:
    """
    Fractal energy level E_n^alpha = -(m k^2 / 2 hbar^2) / S(r_n / a0).

    With the power-law staircase in atomic units this is -1/(2 n^(2 alpha)).
    The result is in the energy unit of ``consts``.
    """
    s = _space_staircase(dims, s)
    radius = bohr_radius_level(n, consts) / consts.bohr_radius
    stair = s(radius)
    if stair <= 0:
        raise ComputationError(f"staircase vanishes at r_{n} = {radius}")
    return -0.5 * consts.hartree / stair


def evolve_superposition(
    terms: Sequence[tuple[complex, QuantumNumbers]],
    dims: FractalDims,
    point: tuple[float, float, float],
    t: float,
    consts: PhysicalConstants = ATOMIC_UNITS,
    s_space: Optional[Staircase] = None,
    s_time: Optional[Staircase] = None,
) -> ComplexValue:
    """
    Evaluate sum_n c_n psi_n(point) exp(-(i/hbar) E_n^alpha S_time(t)).

    Coefficients are taken as given; normalizing them is up to the caller.
    """
    if not terms:
        raise ParameterError("evolve_superposition needs at least one term")
    if not (math.isfinite(t) and t >= 0):
        raise ParameterError(f"t must be a finite number >= 0, got {t}")

    s_space = _space_staircase(dims, s_space)
    s_time = _time_staircase(dims, s_time)
    r, theta, phi = point
    tau = s_time(t)

    total: complex = 0j
    for c, qn in terms:
        psi = full_wavefunction(qn, dims, r, theta, phi, consts, 1.0, s_space)
        energy = energy_level(qn.n, dims, consts, s_space)
        total += c * psi * cmath.exp(-1j * energy * tau / consts.hbar)
    return total


def radial_residual(
    qn: QuantumNumbers,
    dims: FractalDims,
    r: float,
    consts: PhysicalConstants = ATOMIC_UNITS,
    s: Optional[Staircase] = None,
    cfg: FalphaConfig = FalphaConfig(),
) -> float:
    """
    Residual of the fractal radial equation at r for the closed-form R_nl.

    The operator is
    -(hbar^2/2m) (S^-2 D(S^2 D R) - l(l+1) R / S^2) - k R / S,
    with D the F^alpha-derivative, and the eigenvalue used is
    -k / (2 n^2 S(a0)). The closed form solves the equation for l = 0 when
    S(a0) equals hbar^2/(m k), which holds in atomic units.

    Raises:
        DerivativeUndefinedError: If the staircase cannot be differentiated at r
    """
    s = _space_staircase(dims, s)
    if not r > 0:
        raise ParameterError(f"radial_residual needs r > 0, got {r}")

    def radial(x: float) -> float:
        return radial_wavefunction(qn, dims, x, consts, 1.0, s)

    def flux(x: float) -> float:
        return s(x) ** 2 * falpha_derivative(radial, s, x, cfg)

    stair = s(r)
    value = radial(r)
    k = consts.coulomb_coupling
    eigenvalue = -k / (2.0 * qn.n ** 2 * s(consts.bohr_radius))

    kinetic = falpha_derivative(flux, s, r, cfg) / stair ** 2 - qn.l * (qn.l + 1) * value / stair ** 2
    lhs = -(consts.hbar ** 2) / (2.0 * consts.electron_mass) * kinetic - k * value / stair
    return abs(lhs - eigenvalue * value)


def normalization_constant(
    qn: QuantumNumbers,
    dims: FractalDims,
    consts: PhysicalConstants = ATOMIC_UNITS,
    s: Optional[Staircase] = None,
    measure: IntegrationMeasure = IntegrationMeasure.FRACTAL,
    r_max: Optional[float] = None,
    cfg: FalphaConfig = FalphaConfig(),
) -> float:
    """
    Amplitude A_nl that normalizes R_nl over [0, r_max].

    Args:
        qn: Quantum numbers
        dims: Fractal dimensions
        consts: Physical constants
        s: Space staircase, defaults to S(r) = r^alpha
        measure: ``fractal`` integrates |R|^2 against S, ``volume`` against
            r^2 dr, ``plain`` against dr
        r_max: Upper radius, defaults to the point where S(r) reaches
            60 n S(a0)
        cfg: Discretisation of the integral

    Returns:
        1 / sqrt(integral of |R|^2) with R evaluated at A_nl = 1

    Raises:
        ComputationError: If the default r_max is out of reach of the staircase
            or the integral vanishes
    """
    s = _space_staircase(dims, s)
    measure = IntegrationMeasure(measure)
    if r_max is None:
        r_max = s.inverse(NORMALIZATION_SPAN * qn.n * s(consts.bohr_radius))
    _check_radius(r_max)

    def density(x: float) -> float:
        return radial_wavefunction(qn, dims, x, consts, 1.0, s) ** 2

    if measure is IntegrationMeasure.FRACTAL:
        norm = falpha_integral(density, s, 0.0, r_max, cfg)
    elif measure is IntegrationMeasure.VOLUME:
        norm = falpha_integral(lambda x: density(x) * x * x, PowerLawStaircase(1.0), 0.0, r_max, cfg)
    else:
        norm = falpha_integral(density, PowerLawStaircase(1.0), 0.0, r_max, cfg)

    norm = float(abs(norm))
    if norm <= 0:
        raise ComputationError(f"radial wavefunction {qn} has zero norm on [0, {r_max}]")
    logger.debug(f"normalization of {qn} with {measure.value} measure on [0, {r_max:g}]: {norm:.6g}")
    return 1.0 / math.sqrt(norm)
