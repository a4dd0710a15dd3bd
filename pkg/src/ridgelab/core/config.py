"""Application configuration management."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

BASE_DIR = Path(__file__).resolve().parents[3]
ENV_FILE = BASE_DIR / ".env"

# Load environment variables early to support tools that do not rely on Pydantic directly.
if ENV_FILE.exists():
    load_dotenv(ENV_FILE)
else:
    load_dotenv()


class Settings(BaseSettings):
    """Defines environment-driven settings for experiments, numerics and the HTTP surface."""

    model_config = SettingsConfigDict(
        env_file=ENV_FILE,
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    environment: str = Field(default="development", alias="RIDGELAB_ENV")
    debug: bool = Field(default=False, alias="RIDGELAB_DEBUG")

    app_name: str = Field(default="ridgelab", alias="RIDGELAB_APP_NAME")
    app_version: str = Field(default="0.1.0", alias="RIDGELAB_APP_VERSION")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")

    default_seed: int = Field(default=0, alias="RIDGELAB_SEED")
    workers: int = Field(default=1, ge=1, alias="RIDGELAB_WORKERS")

    fd_step: float = Field(default=1e-4, gt=0.0, alias="RIDGELAB_FD_STEP")
    seminorm_grid_size: int = Field(default=100_000, ge=2, alias="RIDGELAB_SEMINORM_GRID")
    domain_tol: float = Field(default=1e-9, ge=0.0, alias="RIDGELAB_DOMAIN_TOL")

    audit_grid_budget: int = Field(default=4096, ge=1, alias="RIDGELAB_AUDIT_GRID")
    audit_random_budget: int = Field(default=4096, ge=1, alias="RIDGELAB_AUDIT_RANDOM")
    audit_line_points: int = Field(default=4097, ge=3, alias="RIDGELAB_LINE_POINTS")

    max_cover_centers: int = Field(default=100_000_000, ge=1, alias="RIDGELAB_MAX_COVER_CENTERS")
    bisection_rel_tol: float = Field(default=1e-2, gt=0.0, alias="RIDGELAB_BISECTION_REL_TOL")
    bisection_max_iter: int = Field(default=40, ge=1, alias="RIDGELAB_BISECTION_MAX_ITER")
    packing_budget: int = Field(default=1000, ge=1, alias="RIDGELAB_PACKING_BUDGET")

    bound_c0_upper: float = Field(default=1.0, alias="RIDGELAB_BOUND_C0")
    bound_c1_upper: float = Field(default=1.0, alias="RIDGELAB_BOUND_C1")
    bound_c0_lower: float = Field(default=1.0, alias="RIDGELAB_BOUND_LOWER_C0")
    bound_c1_lower: float = Field(default=1.0, alias="RIDGELAB_BOUND_LOWER_C1")
    bound_c_upper: float = Field(default=1.0, gt=0.0, alias="RIDGELAB_BOUND_C_UPPER")
    bound_c_lower: float = Field(default=1.0, gt=0.0, alias="RIDGELAB_BOUND_C_LOWER")


@lru_cache
def get_settings() -> Settings:
    """Return a cached settings instance."""

    return Settings()
