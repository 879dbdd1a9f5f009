"""
Fractal simple harmonic oscillator.

Handles:
- Eigenfunctions and densities with the staircase as coordinate
- Energy levels, both the ladder form and the position form
- Time evolution of superpositions in fractal time
- Residual of the fractal time-independent equation

Negative positions use the odd staircase extension S(-x) = -S(x), so
eigenfunctions keep parity (-1)^n for every alpha.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import ParameterError
from ..fcalc import FalphaConfig, falpha_derivative
from ..hydrogen import FractalDims
from ..measure import PowerLawStaircase, Staircase
from ..specfun import ComplexValue, hermite_function


# 2^n n! leaves the double range above this; levels past it are refused.
MAX_LEVEL = 150


@dataclass(frozen=True)
class OscillatorParams:
    """
    Oscillator parameters.

    ``omega_alpha`` is the fractal angular frequency taken as a single
    parameter, not a frequency raised to alpha.
    """
    mass: float = 1.0
    omega_alpha: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("mass", "omega_alpha", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be a positive number, got {value}")


UNIT_PARAMS = OscillatorParams()


def _check_level(n: int) -> None:
    if not 0 <= n <= MAX_LEVEL:
        raise ParameterError(f"n must be in [0, {MAX_LEVEL}], got {n}")


def _staircase(alpha: float, s: Optional[Staircase]) -> Staircase:
    if s is None:
        return PowerLawStaircase(alpha)
    if abs(s.alpha - alpha) > 1e-9:
        raise ParameterError(f"staircase {s!r} does not match exponent {alpha}")
    return s


def eigenfunction(
    n: int,
    dims: FractalDims,
    x: float,
    p: OscillatorParams = UNIT_PARAMS,
    s: Optional[Staircase] = None,
) -> float:
    """
    Eigenfunction psi_n^alpha(x).

    Args:
        n: Level, 0 <= n <= 150
        dims: Fractal dimensions
        x: Position
        p: Oscillator parameters
        s: Space staircase, defaults to S(x) = x^alpha (odd-extended)

    Returns:
        (2^n n!)^(-1/2) (m w/(pi hbar))^(1/4) exp(-m w S^2 / 2 hbar) H_n(sqrt(m w / hbar) S)
    """
    _check_level(n)
    s = _staircase(dims.alpha, s)
    u = s(x)
    mw = p.mass * p.omega_alpha / p.hbar
    return mw ** 0.25 * float(hermite_function(n, math.sqrt(mw) * u))


def density(
    n: int,
    dims: FractalDims,
    x: float,
    p: OscillatorParams = UNIT_PARAMS,
    s: Optional[Staircase] = None,
) -> float:
    """Probability density |psi_n^alpha(x)|^2."""
    return eigenfunction(n, dims, x, p, s) ** 2


def energy(n: int, p: OscillatorParams = UNIT_PARAMS) -> float:
    """Ladder form E_n = hbar omega_alpha (n + 1/2)."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return p.hbar * p.omega_alpha * (n + 0.5)


def energy_position_form(
    n: int,
    dims: FractalDims,
    x: float,
    p: OscillatorParams = UNIT_PARAMS,
    s: Optional[Staircase] = None,
) -> float:
    """
    Position form hbar sqrt(S(x)/m) (n + 1/2).

    Raises:
        ParameterError: If x < 0
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if not x >= 0:
        raise ParameterError(f"energy_position_form needs x >= 0, got {x}")
    s = _staircase(dims.alpha, s)
    return p.hbar * math.sqrt(s(x) / p.mass) * (n + 0.5)


def evolve(
    terms: Sequence[tuple[complex, int]],
    dims: FractalDims,
    x: float,
    t: float,
    p: OscillatorParams = UNIT_PARAMS,
    s_space: Optional[Staircase] = None,
    s_time: Optional[Staircase] = None,
) -> ComplexValue:
    """Evaluate sum_n c_n psi_n^alpha(x) exp(-i E_n S_time(t) / hbar)."""
    if not terms:
        raise ParameterError("evolve needs at least one term")
    if not (math.isfinite(t) and t >= 0):
        raise ParameterError(f"t must be a finite number >= 0, got {t}")

    s_space = _staircase(dims.alpha, s_space)
    s_time = _staircase(dims.beta, s_time)
    tau = s_time(t)

    total: complex = 0j
    for c, n in terms:
        psi = eigenfunction(n, dims, x, p, s_space)
        total += c * psi * cmath.exp(-1j * energy(n, p) * tau / p.hbar)
    return total


def superposition_density(
    terms: Sequence[tuple[complex, int]],
    dims: FractalDims,
    x: float,
    t: float,
    p: OscillatorParams = UNIT_PARAMS,
    s_space: Optional[Staircase] = None,
    s_time: Optional[Staircase] = None,
) -> float:
    """|Psi(x, t)|^2 of a superposition."""
    return abs(evolve(terms, dims, x, t, p, s_space, s_time)) ** 2


def tise_residual(
    n: int,
    dims: FractalDims,
    x: float,
    p: OscillatorParams = UNIT_PARAMS,
    s: Optional[Staircase] = None,
    cfg: FalphaConfig = FalphaConfig(),
) -> float:
    """
    |-(hbar^2/2m) D(D psi) + (1/2) m w^2 S(x)^2 psi - E_n psi| at x.

    D is the F^alpha-derivative, so D^(2 alpha) is D applied twice.

    Raises:
        DerivativeUndefinedError: If the staircase cannot be differentiated at x
    """
    s = _staircase(dims.alpha, s)

    def psi(y: float) -> float:
        return eigenfunction(n, dims, y, p, s)

    def first(y: float) -> float:
        return falpha_derivative(psi, s, y, cfg)

    value = psi(x)
    u = s(x)
    kinetic = -(p.hbar ** 2) / (2.0 * p.mass) * falpha_derivative(first, s, x, cfg)
    potential = 0.5 * p.mass * p.omega_alpha ** 2 * u * u * value
    return abs(kinetic + potential - energy(n, p) * value)
