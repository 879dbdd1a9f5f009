"""
Finite-depth Cantor-type fractal sets.

Handles construction and queries of symmetric two-map Cantor sets:
- CantorSpec: keep ratio and support interval
- IntervalUnion: depth-k approximant as sorted disjoint closed intervals
- Flag function and point membership against the approximant

"The fractal" always means the depth -> infinity limit; every query here
answers for the stored approximant.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ParameterError


@dataclass(frozen=True)
class CantorSpec:
    """Symmetric Cantor set on [c1, c2] keeping two end pieces per step."""
    keep_ratio: float
    support: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self) -> None:
        if not 0.0 < self.keep_ratio <= 0.5:
            raise ParameterError(f"keep_ratio must lie in (0, 1/2], got {self.keep_ratio}")
        c1, c2 = self.support
        if not (math.isfinite(c1) and math.isfinite(c2)) or c1 >= c2:
            raise ParameterError(f"support must satisfy c1 < c2, got {self.support}")

    @property
    def c1(self) -> float:
        return float(self.support[0])

    @property
    def c2(self) -> float:
        return float(self.support[1])

    @property
    def length(self) -> float:
        return self.c2 - self.c1

    @property
    def is_full_interval(self) -> bool:
        return self.keep_ratio == 0.5

    @property
    def similarity_dimension(self) -> float:
        """ln 2 / ln(1/keep_ratio)."""
        return math.log(2.0) / math.log(1.0 / self.keep_ratio)

    @classmethod
    def for_dimension(cls, alpha: float, support: tuple[float, float] = (0.0, 1.0)) -> "CantorSpec":
        """
        Build the Cantor set whose similarity dimension equals alpha.

        Args:
            alpha: Target dimension in (0, 1]
            support: Support interval

        Returns:
            CantorSpec with keep_ratio = 2^(-1/alpha)
        """
        if not 0.0 < alpha <= 1.0:
            raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
        if alpha == 1.0:
            return cls(keep_ratio=0.5, support=support)
        return cls(keep_ratio=2.0 ** (-1.0 / alpha), support=support)


@dataclass(frozen=True)
class IntervalUnion:
    """
    Depth-k approximant of a Cantor set.

    ``lefts`` and ``rights`` are read-only arrays of the interval endpoints,
    sorted, with rights[i] < lefts[i+1]. For keep_ratio < 1/2 there are
    2^depth intervals of length keep_ratio^depth * (c2 - c1); for
    keep_ratio = 1/2 the touching pieces merge into the single support
    interval.
    """
    spec: CantorSpec
    depth: int
    lefts: np.ndarray = field(repr=False)
    rights: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.lefts.size)

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.lefts, self.rights)]

    @property
    def interval_length(self) -> float:
        """Length of each stored interval."""
        return float(self.rights[0] - self.lefts[0])

    def lebesgue_measure(self) -> float:
        """Total length of the approximant."""
        return float(np.sum(self.rights - self.lefts))

    def gaps(self) -> list[tuple[float, float]]:
        """Removed open gaps between consecutive intervals."""
        return [(float(b), float(a)) for b, a in zip(self.rights[:-1], self.lefts[1:])]

    def smallest_gap(self) -> Optional[float]:
        if len(self) < 2:
            return None
        return float(np.min(self.lefts[1:] - self.rights[:-1]))

    def block_length(self, level: int) -> float:
        """Length of a level-``level`` block (an interval of the shallower approximant)."""
        level = min(max(level, 0), self.depth)
        if self.spec.is_full_interval:
            return self.spec.length
        return self.spec.keep_ratio ** level * self.spec.length

    def blocks(self, level: int) -> tuple[np.ndarray, np.ndarray]:
        """
        Intervals of the level-``level`` approximant.

        Each level-j interval is the hull of 2^(depth-j) consecutive stored
        intervals, so no rebuild is needed.

        Returns:
            (lefts, rights) arrays of the coarser approximant
        """
        level = min(max(level, 0), self.depth)
        if len(self) == 1:
            return self.lefts, self.rights
        group = 2 ** (self.depth - level)
        return self.lefts[::group], self.rights[group - 1::group]


def build_cantor(spec: CantorSpec, depth: int) -> IntervalUnion:
    """
    Build the depth-k approximant of the Cantor set described by spec.

    Args:
        spec: Cantor set description
        depth: Number of refinement steps, >= 0

    Returns:
        IntervalUnion with the retained intervals
    """
    if depth < 0:
        raise ParameterError(f"depth must be >= 0, got {depth}")

    if spec.is_full_interval:
        lefts = np.array([spec.c1])
        rights = np.array([spec.c2])
    else:
        lefts = np.array([spec.c1])
        length = spec.length
        for _ in range(depth):
            child = length * spec.keep_ratio
            lefts = np.concatenate([lefts, lefts + (length - child)])
            lefts.sort()
            length = child
        rights = lefts + length
        # Pin the outer endpoints so c1, c2 stay exact members.
        rights[-1] = spec.c2

    lefts.setflags(write=False)
    rights.setflags(write=False)
    return IntervalUnion(spec=spec, depth=depth, lefts=lefts, rights=rights)


def flags(fset: IntervalUnion, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    """
    Vectorised flag function for many closed intervals [lows[i], highs[i]].

    Returns:
        Integer array with 1 where the interval meets the approximant
    """
    lows = np.asarray(lows, dtype=float)
    highs = np.asarray(highs, dtype=float)
    # Last stored interval starting at or before the high end; it has the
    # largest right endpoint among all candidates.
    idx = np.searchsorted(fset.lefts, highs, side="right") - 1
    safe = np.clip(idx, 0, None)
    hit = (idx >= 0) & (fset.rights[safe] >= lows)
    return hit.astype(int)


def flag(fset: IntervalUnion, interval: tuple[float, float]) -> int:
    """
    Flag function rho(F, I): 1 iff the approximant meets the closed interval I.

    Endpoint contact counts. A degenerate interval [x, x] tests membership of x.
    """
    low, high = interval
    if low > high:
        raise ParameterError(f"interval must satisfy low <= high, got {interval}")
    return int(flags(fset, np.array([low]), np.array([high]))[0])


def contains(fset: IntervalUnion, x: float, tol: float = 0.0) -> bool:
    """True iff x lies within tol of some interval of the approximant."""
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol}")
    return flag(fset, (x - tol, x + tol)) == 1
