"""Concrete adaptive samplers and the factory that builds them from a query budget."""

from __future__ import annotations

import logging
import math
from typing import Any

import numpy as np

from ...core.config import get_settings
from ...core.exceptions import BudgetExceededError
from ..classes.types import ClassSpec, RidgeFunction
from ..geometry.nets import AnchoredCover, anchored_cover
from ..geometry.norms import NormSpec
from .recovery import direction_dialogue
from .taylor import plan_stencil, stencil_reach, stencil_size, taylor_dialogue
from .types import (
    AdaptiveSampler,
    Dialogue,
    PiecewiseConstantApproximant,
    PiecewiseTaylorApproximant,
    RecoveryParams,
    RidgeApproximant,
    TaylorApproximant,
    TaylorModel,
)
from .univariate import interpolation_error_bound, univariate_dialogue

logger = logging.getLogger(__name__)

_BISECTION_STEPS = 60


def _cover_norm(spec: ClassSpec) -> NormSpec:
    return NormSpec(spec.p_prime)


def _fit_cover(spec: ClassSpec, fits: Any) -> float:
    """Smallest radius ε (up to bisection) whose cover passes ``fits``, else the origin radius."""

    outer = AnchoredCover.origin(spec.d, _cover_norm(spec)).radius
    if not fits(outer):
        return math.inf
    low, high = 0.0, outer
    for _ in range(_BISECTION_STEPS):
        middle = 0.5 * (low + high)
        if fits(middle):
            high = middle
        else:
            low = middle
        if high - low <= 1e-3 * high:
            break
    return high


def _cover_size(d: int, eps: float, norm: NormSpec, limit: int) -> int | None:
    if eps >= AnchoredCover.origin(d, norm).radius:
        return 1
    try:
        return anchored_cover(d, eps, norm, max_centers=limit).size
    except BudgetExceededError:
        return None


class CoverSampler(AdaptiveSampler):
    """Query f at one anchor per ε-cell of B̄₂^d in ℓ_{p'}; return the piecewise-constant fit.

    For α ≤ 1 the error is at most 2ε^α (ε^α for profiles with slope at most one).
    """

    name = "cover"

    def __init__(
        self,
        spec: ClassSpec,
        eps: float,
        *,
        max_centers: int | None = None,
        budget: int | None = None,
    ) -> None:
        if spec.is_smooth or spec.alpha > 1:
            msg = f"The cover sampler needs alpha <= 1, got alpha={spec.alpha}"
            raise ValueError(msg)
        if not eps > 0:
            msg = f"Cover radius must be positive, got eps={eps}"
            raise ValueError(msg)
        norm = _cover_norm(spec)
        origin = AnchoredCover.origin(spec.d, norm)
        if eps >= origin.radius:
            self.cover = origin
        else:
            limit = max_centers or get_settings().max_cover_centers
            self.cover = anchored_cover(spec.d, eps, norm, max_centers=limit)
        self.eps = min(eps, origin.radius)
        logger.debug(
            "Cover sampler: %d cells at eps=%.4g in d=%d", self.cover.size, self.eps, spec.d
        )
        super().__init__(spec, max(budget or 0, self.cover.size))

    @classmethod
    def from_budget(cls, spec: ClassSpec, n: int) -> CoverSampler:
        if n < 1:
            msg = f"Query budget must be at least 1, got n={n}"
            raise ValueError(msg)
        norm = _cover_norm(spec)

        def fits(eps: float) -> bool:
            size = _cover_size(spec.d, eps, norm, n)
            return size is not None and size <= n

        return cls(spec, _fit_cover(spec, fits), budget=n)

    def certified_bound(self) -> float:
        return 2.0 * min(1.0, self.eps) ** self.spec.alpha

    def dialogue(self) -> Dialogue:
        values = np.empty(self.cover.size)
        for index, anchor in enumerate(self.cover.anchors):
            values[index] = yield anchor
        return PiecewiseConstantApproximant(self.cover, self.cover.anchors, values)

    def as_dict(self) -> dict[str, Any]:
        payload = super().as_dict()
        payload.update({"eps": self.eps, "cells": self.cover.size})
        return payload


class TaylorCoverSampler(AdaptiveSampler):
    """For 1 < α < ∞: a finite-difference Taylor model of order s per ε-cell.

    Each stencil center is its cell anchor pulled toward the origin until the whole stencil lies
    in the ball; the error is at most (2/s!)(ε + r)^α plus finite-difference error, r the reach.
    """

    name = "taylor"

    def __init__(
        self,
        spec: ClassSpec,
        eps: float,
        *,
        fd_step: float | None = None,
        max_centers: int | None = None,
        budget: int | None = None,
    ) -> None:
        if spec.is_smooth or spec.alpha <= 1:
            msg = f"The Taylor cover sampler needs 1 < alpha < inf, got alpha={spec.alpha}"
            raise ValueError(msg)
        if not eps > 0:
            msg = f"Cover radius must be positive, got eps={eps}"
            raise ValueError(msg)
        self.order = int(spec.s)  # type: ignore[arg-type]
        self.fd_step = fd_step
        norm = _cover_norm(spec)
        origin = AnchoredCover.origin(spec.d, norm)
        if eps >= origin.radius:
            self.cover = origin
        else:
            limit = max_centers or get_settings().max_cover_centers
            self.cover = anchored_cover(spec.d, eps, norm, max_centers=limit)
        self.eps = min(eps, origin.radius)
        self.reach = stencil_reach(spec.d, self.order, fd_step)
        if self.reach >= 1.0:
            msg = f"Stencil reach {self.reach:.3g} does not fit in the unit ball"
            raise BudgetExceededError(msg)
        self.centers = self._pull_inward(self.cover.anchors)
        per_center = stencil_size(spec.d, self.order, fd_step)
        logger.debug(
            "Taylor cover sampler: %d cells x %d queries, order %d, reach %.3g",
            self.cover.size,
            per_center,
            self.order,
            self.reach,
        )
        super().__init__(spec, max(budget or 0, self.cover.size * per_center))

    def _pull_inward(self, anchors: np.ndarray) -> np.ndarray:
        radii = np.linalg.norm(anchors, axis=1, keepdims=True)
        room = 1.0 - self.reach
        scale = np.where(radii > room, room / np.maximum(radii, 1e-300), 1.0)
        return anchors * scale

    @classmethod
    def from_budget(
        cls, spec: ClassSpec, n: int, *, fd_step: float | None = None
    ) -> TaylorCoverSampler:
        order = int(spec.s)  # type: ignore[arg-type]
        per_center = stencil_size(spec.d, order, fd_step)
        if per_center > n:
            msg = f"Budget {n} is below one Taylor stencil ({per_center} queries)"
            raise BudgetExceededError(msg)
        cells = n // per_center
        norm = _cover_norm(spec)

        def fits(eps: float) -> bool:
            size = _cover_size(spec.d, eps, norm, cells)
            return size is not None and size <= cells

        return cls(spec, _fit_cover(spec, fits), fd_step=fd_step, budget=n)

    def certified_bound(self) -> float:
        return 2.0 / math.factorial(self.order) * (self.eps + self.reach) ** self.spec.alpha

    def dialogue(self) -> Dialogue:
        models: list[TaylorModel] = []
        for center in self.centers:
            model = yield from taylor_dialogue(center, self.order, self.fd_step)
            models.append(model)
        return PiecewiseTaylorApproximant(self.cover, models)

    def as_dict(self) -> dict[str, Any]:
        payload = super().as_dict()
        payload.update(
            {"eps": self.eps, "cells": self.cover.size, "order": self.order, "reach": self.reach}
        )
        return payload


class TwoStepSampler(AdaptiveSampler):
    """For R^{α,2,κ} with α > 1: recover the direction from d+1 values, then interpolate the
    profile along it from the remaining n−d−1 values (f(0) is reused when 0 is a node)."""

    name = "two-step"

    def __init__(self, spec: ClassSpec, n: int) -> None:
        if spec.is_smooth or spec.alpha <= 1:
            msg = f"The two-step sampler needs 1 < alpha < inf, got alpha={spec.alpha}"
            raise ValueError(msg)
        if not spec.kappa > 0:
            msg = "The two-step sampler needs a positive derivative floor kappa"
            raise ValueError(msg)
        self.order = int(spec.s)  # type: ignore[arg-type]
        if n < spec.d + self.order + 2:
            msg = f"Budget {n} is below d+s+2 = {spec.d + self.order + 2}"
            raise ValueError(msg)
        self.k = n - spec.d - 1
        # n - d >= s + 2 >= 3, so this stays below 1/3
        self.direction_eps = float(n - spec.d) ** (-spec.alpha)
        self.params = RecoveryParams(
            eps=self.direction_eps, kappa=spec.kappa, beta=min(1.0, spec.alpha - 1.0)
        )
        super().__init__(spec, n)

    @classmethod
    def from_budget(cls, spec: ClassSpec, n: int) -> TwoStepSampler:
        return cls(spec, n)

    def certified_bound(self) -> float:
        interpolation = interpolation_error_bound(self.k, self.order, self.spec.alpha)
        return interpolation + self.direction_eps

    def dialogue(self) -> Dialogue:
        recovered = yield from direction_dialogue(self.d, self.params, allow_zero=True)
        direction = recovered.direction
        profile = yield from univariate_dialogue(
            self.k, self.order, lambda t: t * direction, known={0.0: recovered.f0}
        )
        return RidgeApproximant(direction, profile)

    def as_dict(self) -> dict[str, Any]:
        payload = super().as_dict()
        payload.update({"k": self.k, "order": self.order, "recovery": self.params.as_dict()})
        return payload


def ridge_taylor_order(eps: float) -> int:
    """Smallest s ≥ 1 with 2/s! ≤ ε."""

    order = 1
    while 2.0 / math.factorial(order) > eps:
        order += 1
    return order


def general_taylor_order(eps: float, d: int) -> int:
    """Smallest s ≥ 1 with 2 d^{s/2} / (s−1)! ≤ ε."""

    order = 1
    while 2.0 * d ** (order / 2.0) / math.factorial(order - 1) > eps:
        order += 1
    return order


class TaylorAtZeroSampler(AdaptiveSampler):
    """For α = ∞: one Taylor polynomial at the origin from finite differences.

    The "ridge" variant picks the smallest s with 2/s! ≤ ε, "general" the smallest s with
    2 d^{s/2}/(s−1)! ≤ ε.
    """

    name = "taylor-zero"

    def __init__(
        self,
        spec: ClassSpec,
        eps: float | None = None,
        *,
        variant: str = "ridge",
        order: int | None = None,
        fd_step: float | None = None,
        budget: int | None = None,
    ) -> None:
        if not spec.is_smooth:
            msg = f"The Taylor-at-zero sampler needs alpha = inf, got alpha={spec.alpha}"
            raise ValueError(msg)
        normalized = variant.strip().lower()
        if normalized not in ("ridge", "general"):
            msg = f"Unsupported Taylor variant '{variant}'"
            raise ValueError(msg)
        if order is None:
            if eps is None or not eps > 0:
                msg = "A positive accuracy eps or an explicit order is required"
                raise ValueError(msg)
            if normalized == "ridge":
                order = ridge_taylor_order(eps)
            else:
                order = general_taylor_order(eps, spec.d)
        self.variant = normalized
        self.order = order
        self.fd_step = fd_step
        self.eps = eps
        plan = plan_stencil(np.zeros(spec.d), order, fd_step)
        self.coefficient_count = math.comb(spec.d + order, order)
        self.stencil_factor = plan.stencil_factor
        logger.info(
            "Taylor-at-zero order %d in d=%d: %d queries (%d coefficients x stencil factor %.3f)",
            order,
            spec.d,
            plan.size,
            self.coefficient_count,
            self.stencil_factor,
        )
        super().__init__(spec, max(budget or 0, plan.size))

    @classmethod
    def from_budget(
        cls, spec: ClassSpec, n: int, *, variant: str = "ridge", fd_step: float | None = None
    ) -> TaylorAtZeroSampler:
        order = 0
        while math.comb(spec.d + order + 1, order + 1) <= n:
            if stencil_size(spec.d, order + 1, fd_step) > n:
                break
            order += 1
        if order == 0:
            msg = f"Budget {n} is below a first-order stencil in d={spec.d}"
            raise BudgetExceededError(msg)
        return cls(spec, variant=variant, order=order, fd_step=fd_step, budget=n)

    def certified_bound(self) -> float:
        if self.variant == "general":
            return 2.0 * self.d ** (self.order / 2.0) / math.factorial(self.order - 1)
        return 2.0 / math.factorial(self.order)

    def dialogue(self) -> Dialogue:
        model = yield from taylor_dialogue(np.zeros(self.d), self.order, self.fd_step)
        return TaylorApproximant(model)

    def as_dict(self) -> dict[str, Any]:
        payload = super().as_dict()
        payload.update(
            {
                "variant": self.variant,
                "order": self.order,
                "coefficients": self.coefficient_count,
                "stencil_factor": self.stencil_factor,
            }
        )
        return payload


def cover_sampler(spec: ClassSpec, eps: float) -> CoverSampler:
    return CoverSampler(spec, eps)


def taylor_cover_sampler(
    spec: ClassSpec, eps: float, fd_step: float | None = None
) -> TaylorCoverSampler:
    return TaylorCoverSampler(spec, eps, fd_step=fd_step)


def two_step_sampler(spec: ClassSpec, n: int) -> TwoStepSampler:
    return TwoStepSampler(spec, n)


def taylor_at_zero_sampler(
    spec: ClassSpec, eps: float, variant: str = "ridge"
) -> TaylorAtZeroSampler:
    return TaylorAtZeroSampler(spec, eps, variant=variant)


def two_step_decomposition(
    f: RidgeFunction, approximant: RidgeApproximant, points: np.ndarray
) -> dict[str, np.ndarray]:
    """Split |f̂ − f| into the interpolation part E₁ = |ĝ(â·x) − g̃(â·x)| and the direction part
    E₂ = |g̃(â·x) − f(x)|, where g̃(t) = g(t a·â)."""

    points = np.asarray(points, dtype=float)
    t = np.clip(points @ approximant.direction, -1.0, 1.0)
    tilt = float(f.direction @ approximant.direction)
    along = np.asarray(f.profile(np.clip(tilt * t, -1.0, 1.0)))
    interpolation = np.abs(np.asarray(approximant.profile(t)) - along)
    direction = np.abs(along - np.asarray(f(points)))
    total = np.abs(np.asarray(approximant(points)) - np.asarray(f(points)))
    return {"total": total, "interpolation": interpolation, "direction": direction}


class SamplerFactory:
    """Factory for samplers sized by a query budget."""

    names = ("cover", "taylor", "two-step", "taylor-zero")

    @staticmethod
    def create(name: str, spec: ClassSpec, n: int) -> AdaptiveSampler:
        normalized = name.strip().lower()
        if normalized == "cover":
            return CoverSampler.from_budget(spec, n)
        if normalized == "taylor":
            return TaylorCoverSampler.from_budget(spec, n)
        if normalized in ("two-step", "two_step"):
            return TwoStepSampler.from_budget(spec, n)
        if normalized in ("taylor-zero", "taylor_zero"):
            return TaylorAtZeroSampler.from_budget(spec, n)
        msg = f"Unsupported sampler '{name}'"
        raise ValueError(msg)

    @staticmethod
    def default_for(spec: ClassSpec) -> str:
        """The sampler matching the class: cover, Taylor cover, two-step or Taylor at zero."""

        if spec.is_smooth:
            return "taylor-zero"
        if spec.alpha <= 1:
            return "cover"
        if spec.kappa > 0 and spec.p == 2:
            return "two-step"
        return "taylor"


__all__ = [
    "CoverSampler",
    "SamplerFactory",
    "TaylorAtZeroSampler",
    "TaylorCoverSampler",
    "TwoStepSampler",
    "cover_sampler",
    "general_taylor_order",
    "ridge_taylor_order",
    "taylor_at_zero_sampler",
    "taylor_cover_sampler",
    "two_step_decomposition",
    "two_step_sampler",
]
