"""
Experiment configuration: a flat key=value file (dotenv syntax) validated by
Pydantic. List values are comma separated. Command-line flags override file
values.
"""
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.config import get_output_dir, settings
from src.core.exceptions import ConfigurationError
from src.geometry.domains import SphericalCap
from src.geometry.points import level_one_count

SIGMA_CAPS: Dict[str, float] = {"S1": 1.0, "S2": 0.2, "S3": 0.1}
DESK_SCALE_LEVELS = 4
LIST_FIELDS = ("sigmas", "lambdas", "cap_center")


def sigma_cap(label: str) -> SphericalCap:
    """Sigma^c for a named experiment region: a cap about e3."""
    try:
        return SphericalCap(np.array([0.0, 0.0, 1.0]), SIGMA_CAPS[label])
    except KeyError:
        raise ConfigurationError(f"unknown sigma label {label!r}; expected one of {sorted(SIGMA_CAPS)}") from None


class ExperimentConfig(BaseModel):
    """Parameters of a convergence, decomposition, min-norm or BEP run."""

    model_config = ConfigDict(extra="forbid")

    sigmas: List[str] = Field(default_factory=lambda: ["S1", "S2", "S3"])
    cap_center: Optional[List[float]] = Field(default=None, description="Custom Sigma^c center")
    cap_radius: Optional[float] = Field(default=None, gt=0.0, lt=2.0, description="Custom Sigma^c polar radius")
    nmax: int = Field(default=3, ge=1, le=8)
    allow_large: bool = False
    degree: int = Field(default_factory=lambda: settings.default_degree, ge=8, le=300)
    s: float = Field(default=2.25, gt=1.0)
    nu: float = Field(default=2.21, gt=1.0)
    gamma: float = Field(default=0.5, gt=0.0, lt=1.0)
    c_bar: float = Field(default=0.537, gt=0.0)
    count_1: int = Field(default_factory=lambda: level_one_count(), ge=10, description="Level-1 Fibonacci count; defaults to mesh width 0.174")
    lambdas: List[float] = Field(default_factory=lambda: np.logspace(-8, -1, 15).tolist())
    support_a: float = Field(default=0.9, gt=-1.0, lt=1.0)
    neumann_order: int = Field(default=64, ge=1)
    boundary_points: int = Field(default=256, ge=8)
    bep_points: int = Field(default=10, ge=2)
    noise: float = Field(default=0.0, ge=0.0, description="Relative noise added to BEP data")
    seed: int = 12345
    out: Path = Field(default_factory=get_output_dir)

    @field_validator("sigmas", "lambdas", "cap_center", mode="before")
    @classmethod
    def split_lists(cls, v):
        if isinstance(v, str):
            return [item.strip() for item in v.split(",") if item.strip()]
        return v

    @field_validator("sigmas")
    @classmethod
    def check_sigmas(cls, v: List[str]) -> List[str]:
        v = [label.upper() for label in v]
        unknown = [label for label in v if label not in SIGMA_CAPS and label != "CUSTOM"]
        if unknown:
            raise ValueError(f"unknown sigma labels {unknown}")
        return v

    @field_validator("lambdas")
    @classmethod
    def check_lambdas(cls, v: List[float]) -> List[float]:
        if not v or any(lam < 0 for lam in v):
            raise ValueError("lambda grid must be a non-empty list of non-negative values")
        return [float(lam) for lam in v]

    @model_validator(mode="after")
    def check_consistency(self) -> "ExperimentConfig":
        if self.nmax > DESK_SCALE_LEVELS and not self.allow_large:
            raise ValueError(f"nmax={self.nmax} exceeds {DESK_SCALE_LEVELS}; pass allow_large to run it")
        if "CUSTOM" in self.sigmas and (self.cap_center is None or self.cap_radius is None):
            raise ValueError("a custom sigma needs cap_center and cap_radius")
        if self.cap_center is not None and len(self.cap_center) != 3:
            raise ValueError("cap_center must have three components")
        if self.neumann_order > self.boundary_points // 2 - 1:
            raise ValueError("neumann_order must stay below boundary_points / 2")
        return self

    def cap_for(self, label: str) -> SphericalCap:
        if label == "CUSTOM":
            return SphericalCap(np.asarray(self.cap_center, dtype=float), float(self.cap_radius))
        return sigma_cap(label)

    def regions(self) -> List[Tuple[str, SphericalCap]]:
        return [(label, self.cap_for(label)) for label in self.sigmas]

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_text(self) -> str:
        """Serialize in the same key=value format that load reads."""
        lines = []
        for key, value in self.model_dump().items():
            if value is None:
                continue
            if isinstance(value, list):
                value = ",".join(repr(v) if isinstance(v, float) else str(v) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text())
        return path

    @classmethod
    def load(cls, path: Optional[Path] = None, **overrides) -> "ExperimentConfig":
        """Read a config file (optional) and apply non-None overrides."""
        values: Dict[str, object] = {}
        if path is not None:
            path = Path(path)
            if not path.is_file():
                raise ConfigurationError(f"config file not found: {path}")
            values.update({k.lower(): v for k, v in dotenv_values(path).items() if v is not None})
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(f"invalid experiment configuration: {exc}") from exc
