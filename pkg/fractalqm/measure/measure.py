"""
Mass, dimension and staircase functions of Cantor-type sets.

Handles:
- Coarse-grained mass over a structured family of partitions
- Mass function along a mesh schedule
- Gamma-dimension by bisection on the mass trend
- Integral staircase functions (numeric, analytic Cantor, power law)

The infimum over partitions is taken over a fixed, ordered candidate
family so results are deterministic and an upper bound of the true
coarse-grained mass.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy import optimize

from ..errors import ComputationError, ParameterError
from ..fractalset import CantorSpec, IntervalUnion, build_cantor, contains, flags
from ..specfun import gamma_fn


logger = logging.getLogger(__name__)

# Relative width of the flagged sliver cells at block boundaries.
SLIVER_FRACTION = 1e-8
CONVERGENCE_RTOL = 1e-3
DEFAULT_SEARCH_BUDGET = 4
# Uniform grids with more cells than this are skipped.
MAX_UNIFORM_CELLS = 2_000_000
# smallest scale r**k at which membership digits are still trusted
RESOLVED_SCALE = 1e-12
BRACKET_DOUBLINGS = 80
# brentq refuses anything tighter than four machine epsilons
INVERSE_RTOL = 4 * float(np.finfo(float).eps)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")


@dataclass(frozen=True)
class MassEstimate:
    """Coarse-grained mass value at the finest mesh evaluated."""
    value: float
    delta: float
    converged: bool
    history: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ParameterError(f"mass must be >= 0, got {self.value}")
        if self.delta <= 0:
            raise ParameterError(f"delta must be > 0, got {self.delta}")


@dataclass(frozen=True)
class DimensionTrial:
    """One bisection trial: mass at the first and last mesh for a given alpha."""
    alpha: float
    mass_initial: float
    mass_final: float

    @property
    def vanishing(self) -> bool:
        return self.mass_final < self.mass_initial


@dataclass(frozen=True)
class DimensionReport:
    """Result of a gamma-dimension search."""
    value: float
    tol: float
    trials: tuple[DimensionTrial, ...]


# ---------------------------------------------------------------------------
# Partition family
# ---------------------------------------------------------------------------

def _subdivide(lows: np.ndarray, highs: np.ndarray, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Split every [low, high] into the fewest equal cells of width <= delta."""
    widths = highs - lows
    counts = np.maximum(1, np.ceil(widths / delta - 1e-9)).astype(np.int64)
    steps = np.repeat(widths / counts, counts)
    starts = np.repeat(lows, counts)
    offsets = np.repeat(np.cumsum(counts) - counts, counts)
    local = np.arange(int(counts.sum())) - offsets
    cell_lows = starts + local * steps
    return cell_lows, cell_lows + steps


def _gap_aligned_cells(
    fset: IntervalUnion,
    level: int,
    a: float,
    b: float,
    delta: float,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Cells of a partition whose breakpoints sit in removed gaps.

    The level-``level`` blocks clipped to [a, b] are split into cells of
    width <= delta. Every block boundary inside (a, b) is followed (or
    preceded) by a thin flagged sliver; the remaining gap cells never meet
    the set and are not materialised.
    """
    block_lows, block_highs = fset.blocks(level)
    keep = (block_highs >= a) & (block_lows <= b)
    block_lows = np.maximum(block_lows[keep], a)
    block_highs = np.minimum(block_highs[keep], b)
    if block_lows.size == 0:
        return block_lows, block_highs

    gap = fset.smallest_gap()
    sliver = SLIVER_FRACTION * (min(delta, gap) if gap is not None else delta)

    # A block clipped to a single point is a set point at a or b.
    point = block_highs <= block_lows
    block_highs = np.where(point, np.minimum(block_lows + sliver, b), block_highs)
    block_lows = np.where(point & (block_lows + sliver > b), np.maximum(b - sliver, a), block_lows)

    cell_lows, cell_highs = _subdivide(block_lows, block_highs, delta)

    before = block_lows > a
    after = block_highs < b
    sliver_lows = np.concatenate([
        np.maximum(block_lows[before] - sliver, a),
        block_highs[after],
    ])
    sliver_highs = np.concatenate([
        block_lows[before],
        np.minimum(block_highs[after] + sliver, b),
    ])
    return (
        np.concatenate([cell_lows, sliver_lows]),
        np.concatenate([cell_highs, sliver_highs]),
    )


def _candidates(
    fset: IntervalUnion,
    a: float,
    b: float,
    delta: float,
) -> Iterator[tuple[str, np.ndarray, np.ndarray]]:
    """
    Candidate partitions in their fixed enumeration order.

    Gap-aligned partitions come first, starting at the coarsest level whose
    blocks fit inside delta and moving to coarser levels; uniform grids with
    n_min, n_min + 1, ... cells follow.
    """
    finest = fset.depth
    for level in range(fset.depth + 1):
        if fset.block_length(level) <= delta * (1.0 + 1e-9):
            finest = level
            break

    levels = [finest] if fset.spec.is_full_interval else list(range(finest, -1, -1))
    for level in levels:
        lows, highs = _gap_aligned_cells(fset, level, a, b, delta)
        yield f"gap-aligned(level={level})", lows, highs

    n_min = max(1, math.ceil((b - a) / delta - 1e-9))
    n = n_min
    while n <= MAX_UNIFORM_CELLS:
        edges = np.linspace(a, b, n + 1)
        yield f"uniform(n={n})", edges[:-1], edges[1:]
        n += 1


def _partition_cost(
    fset: IntervalUnion,
    alpha: float,
    lows: np.ndarray,
    highs: np.ndarray,
) -> float:
    if lows.size == 0:
        return 0.0
    widths = np.clip(highs - lows, 0.0, None)
    hit = flags(fset, lows, highs)
    return float(gamma_fn(alpha + 1.0) * np.sum(hit * widths ** alpha))


def coarse_mass(
    fset: IntervalUnion,
    alpha: float,
    a: float,
    b: float,
    delta: float,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> MassEstimate:
    """
    Approximate the coarse-grained mass xi_delta^alpha(F, a, b).

    Args:
        fset: Approximant of the fractal set
        alpha: Exponent in (0, 1]
        a: Left end of the window
        b: Right end of the window, b > a
        delta: Mesh bound, > 0
        search_budget: Number of candidate partitions to evaluate

    Returns:
        MassEstimate with the smallest sum found
    """
    _check_alpha(alpha)
    if not a < b:
        raise ParameterError(f"coarse_mass needs a < b, got a={a}, b={b}")
    if delta <= 0:
        raise ParameterError(f"delta must be > 0, got {delta}")
    if search_budget < 1:
        raise ParameterError(f"search_budget must be >= 1, got {search_budget}")

    best = math.inf
    for count, (label, lows, highs) in enumerate(_candidates(fset, a, b, delta)):
        if count >= search_budget:
            break
        cost = _partition_cost(fset, alpha, lows, highs)
        logger.debug(f"coarse_mass delta={delta:.3e} {label}: {cost:.12g}")
        best = min(best, cost)

    return MassEstimate(value=best, delta=delta, converged=False, history=(best,))


def default_mesh_schedule(fset: IntervalUnion) -> list[float]:
    """
    Mesh schedule matched to the self-similar scales of the approximant.

    Returns:
        [q L, q^2 L, ..., q^depth L] with q the keep ratio
    """
    q = fset.spec.keep_ratio
    length = fset.spec.length
    return [length * q ** k for k in range(1, max(fset.depth, 1) + 1)]


def mass_function(
    fset: IntervalUnion,
    alpha: float,
    a: float,
    b: float,
    mesh_schedule: Sequence[float],
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> MassEstimate:
    """
    Evaluate the coarse-grained mass along a shrinking mesh schedule.

    Args:
        fset: Approximant of the fractal set
        alpha: Exponent in (0, 1]
        a: Left end of the window
        b: Right end of the window
        mesh_schedule: Strictly decreasing positive meshes
        search_budget: Candidates per mesh

    Returns:
        Estimate at the last mesh; converged when the last two values agree
        to a relative 1e-3
    """
    if len(mesh_schedule) == 0:
        raise ParameterError("mesh_schedule must not be empty")
    if any(d <= 0 for d in mesh_schedule):
        raise ParameterError("mesh_schedule entries must be positive")
    if any(later >= earlier for earlier, later in zip(mesh_schedule, mesh_schedule[1:])):
        raise ParameterError("mesh_schedule must be strictly decreasing")

    history = tuple(
        coarse_mass(fset, alpha, a, b, delta, search_budget).value for delta in mesh_schedule
    )

    converged = False
    if len(history) >= 2:
        last, prev = history[-1], history[-2]
        converged = abs(last - prev) <= CONVERGENCE_RTOL * max(abs(last), abs(prev))

    return MassEstimate(
        value=history[-1],
        delta=float(mesh_schedule[-1]),
        converged=converged,
        history=history,
    )


def gamma_dimension_report(
    fset: IntervalUnion,
    a: float,
    b: float,
    tol: float = 0.01,
    mesh_schedule: Optional[Sequence[float]] = None,
    search_budget: int = 2,
) -> DimensionReport:
    """
    Locate the alpha where the mass function turns from divergent to vanishing.

    Each trial compares the mass at the last mesh with the mass at the
    first; bisection runs on the log of that ratio.

    Returns:
        DimensionReport with the estimate and every trial evaluated
    """
    if tol <= 0:
        raise ParameterError(f"tol must be > 0, got {tol}")
    schedule = list(mesh_schedule) if mesh_schedule is not None else default_mesh_schedule(fset)
    if len(schedule) < 2:
        raise ParameterError("gamma_dimension needs a mesh schedule with at least two entries")

    trials: list[DimensionTrial] = []

    def log_ratio(alpha: float) -> float:
        estimate = mass_function(fset, alpha, a, b, schedule, search_budget)
        trial = DimensionTrial(alpha, estimate.history[0], estimate.history[-1])
        trials.append(trial)
        logger.debug(f"dimension trial alpha={alpha:.6f}: {trial.mass_initial:.6g} -> {trial.mass_final:.6g}")
        if trial.mass_initial <= 0 or trial.mass_final <= 0:
            raise ComputationError(f"mass vanishes identically on [{a}, {b}]; no dimension to bracket")
        return math.log(trial.mass_final / trial.mass_initial)

    if log_ratio(1.0) >= -1e-12:
        return DimensionReport(value=1.0, tol=tol, trials=tuple(trials))

    lowest = min(tol, 1e-3)
    if log_ratio(lowest) <= 0:
        raise ComputationError("mass vanishes even for the smallest alpha; dimension not bracketed")

    value = optimize.bisect(log_ratio, lowest, 1.0, xtol=tol / 2)
    logger.info(f"gamma-dimension {value:.6f} after {len(trials)} trials")
    return DimensionReport(value=float(value), tol=tol, trials=tuple(trials))


def gamma_dimension(fset: IntervalUnion, a: float, b: float, tol: float = 0.01) -> float:
    """Gamma-dimension of F intersected with [a, b], within tol."""
    return gamma_dimension_report(fset, a, b, tol).value


# ---------------------------------------------------------------------------
# Staircases
# ---------------------------------------------------------------------------

class StaircaseBackend(str, Enum):
    """Available staircase evaluations."""
    POWER_LAW = "power_law"
    CANTOR_ANALYTIC = "cantor_analytic"
    NUMERIC = "numeric"


class Staircase(ABC):
    """
    Integral staircase S_F^alpha.

    Every backend is odd-extended: S(-x) = -S(x).
    """

    backend: StaircaseBackend

    def __init__(self, alpha: float):
        _check_alpha(alpha)
        self.alpha = alpha

    @abstractmethod
    def _evaluate_nonnegative(self, x: float) -> float:
        """S(x) for x >= 0."""

    def evaluate(self, x: float) -> float:
        if not math.isfinite(x):
            raise ParameterError(f"staircase needs a finite argument, got {x}")
        if x < 0:
            return -self._evaluate_nonnegative(-x)
        return self._evaluate_nonnegative(x)

    def __call__(self, x: float) -> float:
        return self.evaluate(x)

    def evaluate_many(self, xs: Sequence[float]) -> np.ndarray:
        return np.array([self.evaluate(float(x)) for x in np.ravel(xs)])

    def is_increasing_at(self, x: float) -> bool:
        """Whether x is a point where S grows (a point of F)."""
        return True

    def inverse(self, u: float) -> float:
        """
        Find a point x with S(x) = u.

        Raises:
            ComputationError: If u lies outside the range of S
        """
        lo, hi = -1.0, 1.0
        for _ in range(BRACKET_DOUBLINGS):
            if self.evaluate(hi) >= u:
                break
            hi *= 2.0
        else:
            raise ComputationError(f"staircase value {u} is out of range")
        for _ in range(BRACKET_DOUBLINGS):
            if self.evaluate(lo) <= u:
                break
            lo *= 2.0
        else:
            raise ComputationError(f"staircase value {u} is out of range")

        try:
            return float(optimize.brentq(lambda x: self.evaluate(x) - u, lo, hi, xtol=1e-15, rtol=INVERSE_RTOL))
        except (ValueError, RuntimeError) as e:
            raise ComputationError(f"cannot invert staircase at {u}: {e}") from e

    def inverse_many(self, us: Sequence[float]) -> np.ndarray:
        return np.array([self.inverse(float(u)) for u in np.ravel(us)])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(alpha={self.alpha})"


class PowerLawStaircase(Staircase):
    """Surrogate S(x) = x^alpha."""

    backend = StaircaseBackend.POWER_LAW

    def _evaluate_nonnegative(self, x: float) -> float:
        return x ** self.alpha

    def evaluate_many(self, xs: Sequence[float]) -> np.ndarray:
        arr = np.asarray(xs, dtype=float)
        return np.sign(arr) * np.abs(arr) ** self.alpha

    def inverse(self, u: float) -> float:
        return math.copysign(abs(u) ** (1.0 / self.alpha), u)

    def inverse_many(self, us: Sequence[float]) -> np.ndarray:
        arr = np.asarray(us, dtype=float)
        return np.sign(arr) * np.abs(arr) ** (1.0 / self.alpha)


class CantorStaircase(Staircase):
    """
    Cantor-Lebesgue function of a symmetric Cantor set, scaled so that
    S(c2) = normalization.
    """

    backend = StaircaseBackend.CANTOR_ANALYTIC
    MAX_DIGITS = 64

    def __init__(self, spec: CantorSpec, normalization: float = 1.0):
        if normalization <= 0:
            raise ParameterError(f"normalization must be > 0, got {normalization}")
        super().__init__(spec.similarity_dimension)
        self.spec = spec
        self.normalization = normalization

    def _evaluate_nonnegative(self, x: float) -> float:
        t = (x - self.spec.c1) / self.spec.length
        if t <= 0:
            return 0.0
        if t >= 1:
            return self.normalization

        r = self.spec.keep_ratio
        value = 0.0
        weight = 0.5
        for _ in range(self.MAX_DIGITS):
            if t <= r:
                t = t / r
            elif t >= 1.0 - r:
                value += weight
                t = (t - (1.0 - r)) / r
            else:
                value += weight
                break
            weight *= 0.5
        return self.normalization * value

    def is_increasing_at(self, x: float) -> bool:
        t = (abs(x) - self.spec.c1) / self.spec.length
        if t < 0 or t > 1:
            return False
        r = self.spec.keep_ratio
        # rounding error grows by 1/r per digit; stop while it is still small
        digits = int(math.log(RESOLVED_SCALE) / math.log(r)) if r < 0.5 else self.MAX_DIGITS
        for _ in range(min(digits, self.MAX_DIGITS)):
            if t <= r:
                t = t / r
            elif t >= 1.0 - r:
                t = (t - (1.0 - r)) / r
            else:
                return False
        return True

    def __repr__(self) -> str:
        return f"CantorStaircase(keep_ratio={self.spec.keep_ratio}, normalization={self.normalization})"


class NumericStaircase(Staircase):
    """
    S(x) = xi^alpha(F, c0, x) computed from the finite approximant.

    For c1 <= x < c0 the value is -xi^alpha(F, x, c0). On a support that
    reaches below zero this signed mass holds on all of [c1, c2]; the odd
    extension S(-x) = -S(x) is only used for x < min(c1, 0).
    """

    backend = StaircaseBackend.NUMERIC

    def __init__(
        self,
        fset: IntervalUnion,
        alpha: float,
        reference: Optional[float] = None,
        search_budget: int = 1,
    ):
        super().__init__(alpha)
        self.fset = fset
        self.reference = fset.spec.c1 if reference is None else reference
        self.search_budget = search_budget
        self.mesh_schedule = default_mesh_schedule(fset)[-2:]

    def _mass(self, a: float, b: float) -> float:
        return mass_function(self.fset, self.alpha, a, b, self.mesh_schedule, self.search_budget).value

    def _signed_mass(self, x: float) -> float:
        c0 = self.reference
        if x > c0:
            return self._mass(c0, x)
        if x < c0:
            return -self._mass(x, c0)
        return 0.0

    def _evaluate_nonnegative(self, x: float) -> float:
        return self._signed_mass(x)

    def _mirrored(self, x: float) -> bool:
        # the odd extension only covers negative points left of the support
        return x < 0 and x < self.fset.spec.c1

    def evaluate(self, x: float) -> float:
        if math.isfinite(x) and x < 0 and not self._mirrored(x):
            return self._signed_mass(x)
        return super().evaluate(x)

    def is_increasing_at(self, x: float) -> bool:
        point = -x if self._mirrored(x) else x
        return contains(self.fset, point, tol=1e-12 * self.fset.spec.length)

    def __repr__(self) -> str:
        return f"NumericStaircase(alpha={self.alpha}, depth={self.fset.depth})"


def staircase_eval(s: Staircase, x: float) -> float:
    """Evaluate a staircase at x."""
    return s.evaluate(x)


def make_staircase(
    backend: StaircaseBackend | str,
    alpha: float,
    support: tuple[float, float] = (0.0, 1.0),
    depth: int = 10,
    normalization: float = 1.0,
) -> Staircase:
    """
    Create a staircase for the requested backend.

    The Cantor backends use the set on ``support`` whose similarity
    dimension equals alpha.
    """
    backend = StaircaseBackend(backend)
    if backend is StaircaseBackend.POWER_LAW:
        return PowerLawStaircase(alpha)
    spec = CantorSpec.for_dimension(alpha, support)
    if backend is StaircaseBackend.CANTOR_ANALYTIC:
        return CantorStaircase(spec, normalization)
    return NumericStaircase(build_cantor(spec, depth), alpha)
