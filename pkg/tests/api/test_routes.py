from __future__ import annotations

import httpx
import pytest
from fastapi.testclient import TestClient

from ridgelab import __version__
from ridgelab.main import create_app


def make_client() -> TestClient:
    return TestClient(create_app())


def test_health_reports_defaults() -> None:
    with make_client() as client:
        response = client.get("/api/health")

    assert response.status_code == 200
    payload = response.json()
    assert payload["status"] == "ok"
    assert payload["package_version"] == __version__
    assert payload["default_seed"] == 0


def test_tractability_endpoint() -> None:
    with make_client() as client:
        curse = client.get("/api/analysis/tractability", params={"alpha": 2.0})
        smooth = client.get("/api/analysis/tractability", params={"alpha": "inf"})
        gap = client.get("/api/analysis/tractability", params={"alpha": 2.0, "p": 0.5})

    assert curse.json()["label"] == "curse"
    assert curse.json()["clause"] == 1
    assert smooth.json()["label"] == "quasi-polynomially tractable"
    assert smooth.json()["alpha"] == "inf"
    assert gap.json()["label"] == "unknown-gap"
    assert gap.json()["clause"] is None


def test_tractability_rejects_invalid_class() -> None:
    with make_client() as client:
        response = client.get("/api/analysis/tractability", params={"alpha": 1.0, "kappa": 0.5})
        missing = client.get("/api/analysis/tractability")

    assert response.status_code == 422
    assert missing.status_code == 422


def test_entropy_bounds_endpoint() -> None:
    with make_client() as client:
        response = client.get(
            "/api/analysis/entropy-bounds", params={"k": 32, "d": 16, "p": 1.0, "alpha": 2.0}
        )
        line = client.get("/api/analysis/entropy-bounds", params={"k": 2, "d": 1})
        bad_q = client.get(
            "/api/analysis/entropy-bounds", params={"k": 2, "d": 4, "q": 1.0, "alpha": 2.0}
        )

    payload = response.json()
    assert payload["ball"] == pytest.approx(2.0**-2 * 16**-0.5)
    assert payload["sphere"]["lower"] <= payload["sphere"]["upper"]
    assert payload["ridge"]["index"] == 64
    assert 0.0 < payload["ridge"]["lower"] <= payload["ridge"]["upper"]
    assert line.json()["sphere"] is None
    assert bad_q.status_code == 422


def test_complexity_endpoint() -> None:
    with make_client() as client:
        response = client.get(
            "/api/analysis/complexity", params={"eps": 0.1, "d": 16, "alpha": 1.0, "p": 1.0}
        )
        euclidean = client.get(
            "/api/analysis/complexity", params={"eps": 0.1, "d": 16, "alpha": 1.0, "p": 2.0}
        )

    payload = response.json()
    assert payload["lower"]["value"] == pytest.approx(101.0)
    assert payload["lower"]["binding"] is True
    assert payload["upper"]["value"] >= 1.0
    assert euclidean.status_code == 422


@pytest.mark.asyncio
async def test_sampling_bounds_over_asgi_transport() -> None:
    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(transport=transport, base_url="http://testserver") as client:
        response = await client.get(
            "/api/analysis/sampling-bounds", params={"n": 12, "d": 2, "alpha": 2.0}
        )
        smooth = await client.get(
            "/api/analysis/sampling-bounds", params={"n": 12, "d": 2, "alpha": "inf"}
        )

    assert response.status_code == 200
    payload = response.json()
    assert payload["two_step"] == pytest.approx(0.01)
    assert payload["upper"] > 0
    assert payload["lower"] > 0
    assert smooth.status_code == 422


__all__ = [
    "test_complexity_endpoint",
    "test_entropy_bounds_endpoint",
    "test_health_reports_defaults",
    "test_sampling_bounds_over_asgi_transport",
    "test_tractability_endpoint",
    "test_tractability_rejects_invalid_class",
]
