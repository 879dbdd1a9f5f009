"""
Configuration module for fractalqm.

Handles loading and merging run configuration from:
- Built-in defaults
- A configuration file named with --config (TOML, YAML or JSON)
- Command-line flags

No environment variables or implicit files are consulted, so a run is
reproducible from its flags and configuration file alone.
"""

import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..errors import ParameterError
from ..fcalc import FalphaConfig
from ..figures import StaircaseChoice
from ..format import OutputFormat
from ..fractalset import CantorSpec
from ..hydrogen import FractalDims, PhysicalConstants, RadialMode
from ..measure import StaircaseBackend
from ..oscillator import OscillatorParams


logger = logging.getLogger(__name__)


class UnitSystem(str, Enum):
    ATOMIC = "atomic"
    SI = "si"


class RunConfig(BaseModel):
    """Pydantic model for run configuration validation."""
    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    unit_system: UnitSystem = UnitSystem.ATOMIC
    staircase_backend: StaircaseBackend = StaircaseBackend.POWER_LAW
    radial_mode: RadialMode = RadialMode.SQUARED
    output_format: OutputFormat = OutputFormat.CSV
    output_path: Optional[Path] = None
    alpha: float = 1.0
    beta: float = 1.0
    keep_ratio: float = Field(default=1.0 / 3.0, gt=0.0, le=0.5)
    depth: int = Field(default=12, ge=0, le=24)
    normalization: float = Field(default=1.0, gt=0.0)
    step: float = Field(default=1e-3, gt=0.0)
    integration_cells: int = Field(default=4096, ge=1)
    mass: float = Field(default=1.0, gt=0.0)
    omega_alpha: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)

    @field_validator("alpha", "beta")
    @classmethod
    def _check_exponent(cls, value: float) -> float:
        if not 0.0 < value <= 1.0:
            raise ValueError(f"must be in (0, 1], got {value}")
        return value


class Config:
    """
    Configuration manager for fractalqm.

    Layers, lowest priority first:
    1. Defaults of RunConfig
    2. The configuration file, if one is given
    3. Overrides (command-line flags); None values are skipped
    """

    YAML_SUFFIXES = (".yaml", ".yml", ".json")

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else None
        self._run = RunConfig()
        self._loaded_paths: list[Path] = []

    def load(self, overrides: Optional[dict[str, Any]] = None) -> "Config":
        """Load the configuration file, then apply overrides."""
        if self.path is not None:
            self._merge_config(self._read_file(self.path))
            self._loaded_paths.append(self.path)
        if overrides:
            self._merge_config({k: v for k, v in overrides.items() if v is not None})
        return self

    def _read_file(self, path: Path) -> dict[str, Any]:
        """Read a flat mapping from a TOML, YAML or JSON file."""
        try:
            if path.suffix.lower() in self.YAML_SUFFIXES:
                with open(path, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f)
            else:
                with open(path, "rb") as f:
                    data = tomllib.load(f)
        except OSError as e:
            raise ParameterError(f"cannot read config file {path}: {e}") from e
        except (tomllib.TOMLDecodeError, yaml.YAMLError) as e:
            raise ParameterError(f"config file {path} is malformed: {e}") from e

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ParameterError(f"config file {path} must hold a flat key/value mapping")
        nested = [key for key, value in data.items() if isinstance(value, dict)]
        if nested:
            raise ParameterError(f"config file {path} has nested sections: {', '.join(nested)}")
        logger.debug(f"config file {path}: {sorted(data)}")
        return data

    def _merge_config(self, data: dict[str, Any]) -> None:
        """Merge values over the current configuration, validating the result."""
        merged = self._run.model_dump()
        merged.update(data)
        try:
            self._run = RunConfig.model_validate(merged)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
            )
            raise ParameterError(f"invalid configuration: {problems}") from e

    @property
    def run(self) -> RunConfig:
        return self._run

    @property
    def loaded_paths(self) -> list[Path]:
        return list(self._loaded_paths)

    @property
    def dims(self) -> FractalDims:
        return FractalDims(self._run.alpha, self._run.beta)

    @property
    def constants(self) -> PhysicalConstants:
        if self._run.unit_system is UnitSystem.SI:
            return PhysicalConstants.si()
        return PhysicalConstants.atomic()

    @property
    def oscillator_params(self) -> OscillatorParams:
        return OscillatorParams(mass=self._run.mass, omega_alpha=self._run.omega_alpha, hbar=self._run.hbar)

    @property
    def falpha_config(self) -> FalphaConfig:
        return FalphaConfig(step=self._run.step, integration_cells=self._run.integration_cells)

    @property
    def staircase_choice(self) -> StaircaseChoice:
        return StaircaseChoice(
            backend=self._run.staircase_backend,
            depth=self._run.depth,
            normalization=self._run.normalization,
        )

    @property
    def cantor_spec(self) -> CantorSpec:
        return CantorSpec(self._run.keep_ratio)

    def to_dict(self) -> dict[str, Any]:
        """Convert configuration to a plain dictionary."""
        data = self._run.model_dump(mode="json")
        return {key: value for key, value in data.items() if value is not None}

    def save(self, path: Path) -> None:
        """Save the merged configuration as YAML."""
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, sort_keys=True)

    def __repr__(self) -> str:
        return f"Config(path={self.path}, loaded_paths={len(self._loaded_paths)})"
