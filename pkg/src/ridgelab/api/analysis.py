"""Closed-form analysis endpoints: tractability, entropy envelopes and complexity bounds."""

from __future__ import annotations

import math
from collections.abc import Callable
from typing import Any, TypeVar

from fastapi import APIRouter, HTTPException, Query

from ..core.config import get_settings
from ..services.geometry.entropy import (
    ridge_entropy_bracket,
    schuett_bound,
    sphere_entropy_bound,
)
from ..services.harness.complexity import (
    complexity_lower,
    complexity_upper,
    entropy_sampling_upper,
    lower_sampling_reference,
    tractability_classify,
    two_step_reference,
    upper_sampling_reference,
)
from ..utils.serialization import jsonable

router = APIRouter(prefix="/analysis", tags=["analysis"])

T = TypeVar("T")


def _evaluate(compute: Callable[[], T]) -> T:
    try:
        return compute()
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@router.get("/tractability")
async def tractability(
    alpha: float = Query(..., gt=0, description="Profile smoothness; 'inf' for C-infinity"),
    p: float = Query(2.0, gt=0, le=2),
    kappa: float = Query(0.0, ge=0, le=1),
) -> dict[str, Any]:
    """Tractability verdict for L∞-approximation of the ridge class."""

    verdict = _evaluate(lambda: tractability_classify(alpha, p, kappa))
    return verdict.as_dict()


@router.get("/entropy-bounds")
async def entropy_bounds(
    k: int = Query(..., ge=1),
    d: int = Query(..., ge=1),
    p: float = Query(2.0, gt=0),
    q: float = Query(2.0, gt=0),
    alpha: float | None = Query(None, gt=0),
) -> dict[str, Any]:
    """Envelopes of e_k(B_p^d, ℓ_q^d), of the sphere and optionally of the ridge class."""

    ball = _evaluate(lambda: schuett_bound(p, q, k, d))
    sphere = _evaluate(lambda: sphere_entropy_bound(p, q, k, d)) if d >= 2 else None
    payload: dict[str, Any] = {"k": k, "d": d, "p": p, "q": q, "ball": ball, "sphere": None}
    if sphere is not None:
        payload["sphere"] = {"lower": sphere[0], "upper": sphere[1]}
    if alpha is not None:
        if math.isinf(alpha) or q != 2:
            raise HTTPException(
                status_code=422, detail="Ridge entropy envelopes need a finite alpha and q = 2"
            )
        lower, upper = _evaluate(lambda: ridge_entropy_bracket(k, d, alpha, p))
        payload["ridge"] = {"index": 2 * k, "lower": lower, "upper": upper}
    return jsonable(payload)


@router.get("/complexity")
async def complexity(
    eps: float = Query(..., gt=0, le=1),
    d: int = Query(..., ge=2),
    alpha: float = Query(..., gt=0),
    p: float = Query(..., gt=0, lt=2),
) -> dict[str, Any]:
    """Upper and lower bounds on log₂ n(ε, d) with the configured constants."""

    upper = _evaluate(lambda: complexity_upper(eps, d, alpha, p))
    lower = _evaluate(lambda: complexity_lower(eps, d, alpha, p))
    return jsonable({"upper": upper.as_dict(), "lower": lower.as_dict()})


@router.get("/sampling-bounds")
async def sampling_bounds(
    n: int = Query(..., ge=1),
    d: int = Query(..., ge=1),
    alpha: float = Query(..., gt=0),
    p: float = Query(2.0, gt=0, le=2),
) -> dict[str, Any]:
    """Reference curves for the sampling numbers at budget n."""

    if math.isinf(alpha):
        raise HTTPException(status_code=422, detail="Sampling reference curves need a finite alpha")
    settings = get_settings()
    upper = _evaluate(lambda: upper_sampling_reference(n, d, alpha, p, settings.bound_c_upper))
    lower = _evaluate(lambda: lower_sampling_reference(n, d, alpha, p, settings.bound_c_lower))
    return jsonable(
        {
            "n": n,
            "d": d,
            "alpha": alpha,
            "p": p,
            "upper": upper,
            "lower": lower,
            "entropy_upper": _evaluate(lambda: entropy_sampling_upper(n, d, alpha, p)),
            "two_step": two_step_reference(n, d, alpha, settings.bound_c_upper),
        }
    )


__all__ = ["router"]
