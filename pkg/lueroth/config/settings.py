"""Global application settings."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Global numerical configuration."""

    model_config = SettingsConfigDict(
        env_prefix="ALPHA_LUEROTH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Application
    app_name: str = "alpha-lueroth"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    # Precision (bits of mantissa)
    precision: int = Field(default=128, ge=53, description="Working mantissa bits")
    max_precision: int = Field(
        default=4096,
        ge=53,
        description="Ceiling for adaptive precision raises in encode/decode",
    )

    # Codec
    k_max: int = Field(default=10_000, gt=0, description="Most digits encode will emit")

    # Cover sums
    cover_cutoff_min: int = Field(default=1_000_000, gt=0)
    cover_cutoff_factor: int = Field(default=100, gt=0)
    direct_sum_limit: int = Field(
        default=4_000_000,
        gt=0,
        description="Finite digit ranges wider than this use integral bounds",
    )
    max_workers: int = Field(default=4, gt=0, description="Threads for per-level factors")

    # Moran solver
    bisection_lo: float = Field(default=1e-3, gt=0.0, lt=1.0)
    bisection_hi: float = Field(default=1.0, gt=0.0, le=1.0)
    tolerance: float = Field(default=1e-9, gt=0.0)

    # Constraint models
    band_search_limit: int = Field(default=10**12, gt=0)

    # Partition diagnostics
    decrease_horizon: int = Field(default=10_000, ge=2)


# Global settings instance
settings = Settings()
