"""API route definitions."""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import APIRouter, Depends

from .. import __version__
from ..core.config import Settings, get_settings

UTC = timezone.utc

router = APIRouter()


@router.get("/health", tags=["health"])
async def healthcheck(settings: Settings = Depends(get_settings)) -> dict[str, object]:
    """Simple health endpoint with the configured defaults."""

    return {
        "status": "ok",
        "application": settings.app_name,
        "version": settings.app_version,
        "package_version": __version__,
        "environment": settings.environment,
        "default_seed": settings.default_seed,
        "timestamp_utc": datetime.now(UTC).isoformat(),
    }


__all__ = ["router"]
