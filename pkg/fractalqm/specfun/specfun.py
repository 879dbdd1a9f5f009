"""
Special functions for the closed-form fractal solutions.

Provides:
- Gamma function (Lanczos approximation)
- Associated Laguerre polynomials (three-term recurrence)
- Physicists' Hermite polynomials and normalized Hermite functions
- Associated Legendre functions and orthonormal spherical harmonics
  (Condon-Shortley phase)

The polynomial routines accept a float or a numpy array for ``x`` and return
the same kind of value.
"""

import math
from typing import Union

import numpy as np

from ..errors import ParameterError


ArrayLike = Union[float, np.ndarray]

# Values of spherical harmonics and time-evolution phases.
ComplexValue = complex

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)

# Lanczos coefficients for g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _finish(values: np.ndarray) -> ArrayLike:
    """Unwrap 0-d results to a plain float."""
    if values.ndim == 0:
        return float(values)
    return values


def gamma_fn(x: float) -> float:
    """
    Evaluate the gamma function.

    Args:
        x: Real argument, not a non-positive integer

    Returns:
        Gamma(x)

    Raises:
        ParameterError: If x is a pole of the gamma function
    """
    if not math.isfinite(x):
        raise ParameterError(f"gamma_fn needs a finite argument, got {x}")
    if x <= 0 and x == math.floor(x):
        raise ParameterError(f"gamma_fn has a pole at {x}")

    if x < 0.5:
        # Reflection formula
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))

    z = x - 1.0
    series = _LANCZOS_COEFFS[0]
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series += coeff / (z + i)

    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * series


def assoc_laguerre(n: int, k: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate the associated Laguerre polynomial L_n^k(x).

    Uses (i+1) L_{i+1} = (2i+1+k-x) L_i - (i+k) L_{i-1}.

    Args:
        n: Degree, n >= 0
        k: Order, k >= 0
        x: Argument(s)

    Returns:
        L_n^k(x)
    """
    if n < 0 or k < 0:
        raise ParameterError(f"assoc_laguerre needs n, k >= 0, got n={n}, k={k}")

    x_arr = np.asarray(x, dtype=float)
    prev = np.ones_like(x_arr)
    if n == 0:
        return _finish(prev)

    current = 1.0 + k - x_arr
    for i in range(1, n):
        prev, current = current, ((2 * i + 1 + k - x_arr) * current - (i + k) * prev) / (i + 1)
    return _finish(current)


def hermite(n: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate the physicists' Hermite polynomial H_n(x).

    Uses H_{i+1} = 2x H_i - 2i H_{i-1}.
    """
    if n < 0:
        raise ParameterError(f"hermite needs n >= 0, got {n}")

    x_arr = np.asarray(x, dtype=float)
    prev = np.ones_like(x_arr)
    if n == 0:
        return _finish(prev)

    current = 2.0 * x_arr
    for i in range(1, n):
        prev, current = current, 2.0 * x_arr * current - 2.0 * i * prev
    return _finish(current)


def hermite_function(n: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate the normalized Hermite function
    (2^n n! sqrt(pi))^(-1/2) exp(-x^2/2) H_n(x).

    Uses psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1} with the
    Gaussian kept as a separate log factor, so the value stays finite where
    H_n alone overflows.
    """
    if n < 0:
        raise ParameterError(f"hermite_function needs n >= 0, got {n}")

    x_arr = np.asarray(x, dtype=float)
    prev = np.zeros_like(x_arr)
    current = np.full_like(x_arr, math.pi ** -0.25)
    log_scale = -0.5 * x_arr * x_arr
    for k in range(n):
        prev, current = current, math.sqrt(2.0 / (k + 1)) * x_arr * current - math.sqrt(k / (k + 1)) * prev
        large = np.abs(current) > _RESCALE
        if np.any(large):
            prev = np.where(large, prev / _RESCALE, prev)
            current = np.where(large, current / _RESCALE, current)
            log_scale = log_scale + np.where(large, _LOG_RESCALE, 0.0)

    with np.errstate(under="ignore"):
        return _finish(current * np.exp(log_scale))


def assoc_legendre(l: int, m: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate the associated Legendre function P_l^m(x), 0 <= m <= l.

    The Condon-Shortley phase (-1)^m is included.
    """
    if l < 0 or m < 0 or m > l:
        raise ParameterError(f"assoc_legendre needs 0 <= m <= l, got l={l}, m={m}")

    x_arr = np.asarray(x, dtype=float)
    somx2 = np.sqrt(np.clip(1.0 - x_arr * x_arr, 0.0, None))

    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2)
    pmm = np.ones_like(x_arr)
    odd = 1.0
    for _ in range(m):
        pmm = -pmm * odd * somx2
        odd += 2.0
    if l == m:
        return _finish(pmm)

    pmmp1 = x_arr * (2 * m + 1) * pmm
    if l == m + 1:
        return _finish(pmmp1)

    for ll in range(m + 2, l + 1):
        pmm, pmmp1 = pmmp1, ((2 * ll - 1) * x_arr * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
    return _finish(pmmp1)


def spherical_harmonic(l: int, m: int, theta: float, phi: float) -> ComplexValue:
    """
    Evaluate the orthonormal spherical harmonic Y_{l,m}(theta, phi).

    Args:
        l: Degree, l >= 0
        m: Order, |m| <= l
        theta: Polar angle in radians, 0 <= theta <= pi
        phi: Azimuthal angle in radians

    Returns:
        Complex value of Y_{l,m}
    """
    if l < 0:
        raise ParameterError(f"spherical_harmonic needs l >= 0, got {l}")
    if abs(m) > l:
        raise ParameterError(f"spherical_harmonic needs |m| <= l, got l={l}, m={m}")
    if not -1e-12 <= theta <= math.pi + 1e-12:
        raise ParameterError(f"theta must lie in [0, pi], got {theta}")

    mm = abs(m)
    norm = math.sqrt(
        (2 * l + 1) / (4.0 * math.pi) * math.factorial(l - mm) / math.factorial(l + mm)
    )
    legendre = float(assoc_legendre(l, mm, math.cos(theta)))
    value = norm * legendre * complex(math.cos(mm * phi), math.sin(mm * phi))

    if m < 0:
        # Y_{l,-m} = (-1)^m conj(Y_{l,m})
        value = (-1) ** mm * value.conjugate()
    return value
