"""
Runtime configuration with Pydantic settings.
Values come from HARDY_* environment variables or a local .env file.
"""
from pathlib import Path
from typing import Annotated, List

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings with validation and type safety."""

    model_config = SettingsConfigDict(
        env_prefix="HARDY_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging Configuration
    log_level: str = Field(default="INFO", pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")
    debug_mode: bool = Field(default=False)
    json_logs: bool = Field(default=True, description="Render structlog events as JSON")

    # Performance Configuration
    max_workers: int = Field(default=4, ge=1, le=64, description="Thread pool size for numeric fan-out")

    # Output Configuration
    output_dir: Path = Field(default=Path("./runs"), description="Default directory for run artifacts")

    # Numerics
    default_degree: int = Field(default=100, ge=1, le=300)
    sample_factor: int = Field(default=40, ge=1, le=1000, description="Sample points per node for mesh widths")
    spd_jitter_ladder: Annotated[List[float], NoDecode] = Field(
        default_factory=lambda: [0.0, 1e-14, 1e-12, 1e-10],
        description="Relative diagonal shifts tried before a factorization is declared singular",
    )

    # Optional: Prometheus Metrics
    enable_metrics: bool = Field(default=False)

    @field_validator("spd_jitter_ladder", mode="before")
    @classmethod
    def parse_jitter_ladder(cls, v):
        """Parse comma-separated jitter values from an environment variable."""
        if isinstance(v, str):
            return [float(x.strip()) for x in v.split(",") if x.strip()]
        return v

    @field_validator("spd_jitter_ladder")
    @classmethod
    def check_jitter_ladder(cls, v: List[float]) -> List[float]:
        if not v or any(x < 0 for x in v):
            raise ValueError("jitter ladder must be a non-empty list of non-negative values")
        return sorted(v)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get settings instance."""
    return settings


def get_output_dir() -> Path:
    """Get the default artifact directory."""
    return settings.output_dir
