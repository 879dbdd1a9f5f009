"""Configuration module for fractalqm."""

from .config import Config, RunConfig, UnitSystem

__all__ = [
    "Config",
    "RunConfig",
    "UnitSystem",
]
