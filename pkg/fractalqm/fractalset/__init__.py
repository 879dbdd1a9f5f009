"""Cantor-type fractal sets for fractalqm."""

from .fractalset import (
    CantorSpec,
    IntervalUnion,
    build_cantor,
    flag,
    flags,
    contains,
)

__all__ = [
    "CantorSpec",
    "IntervalUnion",
    "build_cantor",
    "flag",
    "flags",
    "contains",
]
