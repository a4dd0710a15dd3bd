from __future__ import annotations

import math

import numpy as np
import pytest

from ridgelab.core.exceptions import BudgetExceededError, DomainError
from ridgelab.services.algorithms.samplers import (
    CoverSampler,
    SamplerFactory,
    TaylorAtZeroSampler,
    TwoStepSampler,
    ridge_taylor_order,
    two_step_decomposition,
)
from ridgelab.services.algorithms.taylor import stencil_size
from ridgelab.services.algorithms.types import (
    AdaptiveSampler,
    Dialogue,
    as_oracle,
    run_sampler,
    zero_oracle,
)
from ridgelab.services.classes.catalog import ProfileKind, catalog_profile
from ridgelab.services.classes.types import ClassSpec, RidgeFunction
from ridgelab.services.harness.audit import sup_error_estimate


def make_ridge(spec: ClassSpec, profile_id: str, direction: list[float]) -> RidgeFunction:
    a = np.asarray(direction, dtype=float)
    return RidgeFunction(a / np.linalg.norm(a), catalog_profile(profile_id, spec), spec.p)


def audited_error(f: RidgeFunction, sampler: AdaptiveSampler) -> tuple[float, int]:
    run = run_sampler(sampler, as_oracle(f))
    estimate = sup_error_estimate(f, run.approximant, f.d, 1024, 7, random_budget=1024)
    return estimate.value, run.queries


class _Repeating(AdaptiveSampler):
    name = "repeating"

    def __init__(self, spec: ClassSpec, budget: int, point: list[float]) -> None:
        super().__init__(spec, budget)
        self.point = np.asarray(point, dtype=float)

    def dialogue(self) -> Dialogue:
        while True:
            yield self.point


@pytest.mark.parametrize("kind", list(ProfileKind))
@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("eps", [0.5, 0.25])
def test_cover_sampler_error_within_radius(kind: ProfileKind, d: int, eps: float) -> None:
    spec = ClassSpec(alpha=1.0, d=d)
    sampler = CoverSampler(spec, eps)

    f = make_ridge(spec, kind.label, [1.0, -2.0, 0.5][:d])
    error, queries = audited_error(f, sampler)

    assert error <= eps + 1e-9
    assert queries == sampler.cover.size
    assert sampler.certified_bound() == pytest.approx(2.0 * eps)


def test_cover_sampler_rejects_smooth_classes() -> None:
    with pytest.raises(ValueError):
        CoverSampler(ClassSpec(alpha=2.0, d=2), 0.5)


def test_two_step_error_shrinks_with_budget() -> None:
    spec = ClassSpec(alpha=2.0, kappa=0.5, d=3)
    errors = {}
    for n in (20, 160):
        sampler = TwoStepSampler(spec, n)
        worst = 0.0
        for profile_id in ("linear", "sine", "sine_cubic"):
            error, queries = audited_error(make_ridge(spec, profile_id, [1.0, 2.0, 2.0]), sampler)
            assert queries <= n
            assert error <= sampler.certified_bound()
            worst = max(worst, error)
        errors[n] = worst

    assert errors[160] < errors[20] / 10.0


def test_two_step_decomposition_sums_to_total() -> None:
    spec = ClassSpec(alpha=2.0, kappa=0.5, d=2)
    f = make_ridge(spec, "sine", [1.0, 1.0])
    run = run_sampler(TwoStepSampler(spec, 30), as_oracle(f))
    points = np.random.default_rng(3).uniform(-0.7, 0.7, size=(50, 2))

    parts = two_step_decomposition(f, run.approximant, points)
    assert np.all(parts["total"] <= parts["interpolation"] + parts["direction"] + 1e-12)


def test_two_step_preconditions() -> None:
    with pytest.raises(ValueError):
        TwoStepSampler(ClassSpec(alpha=2.0, d=2), 30)
    with pytest.raises(ValueError):
        TwoStepSampler(ClassSpec(alpha=2.0, kappa=0.5, d=5), 7)


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.5])
def test_two_step_direction_step_at_smallest_budget(alpha: float) -> None:
    spec = ClassSpec(alpha=alpha, kappa=0.5, d=5)
    n = spec.d + int(spec.s) + 2
    sampler = TwoStepSampler(spec, n)

    assert sampler.direction_eps == pytest.approx((n - spec.d) ** -alpha)
    assert sampler.direction_eps < 1 / 3
    assert sampler.params.eps == sampler.direction_eps


@pytest.mark.parametrize("d", [2, 4, 8])
@pytest.mark.parametrize(("eps", "order"), [(0.1, 4), (0.01, 6)])
def test_taylor_at_zero_on_smooth_ridge(d: int, eps: float, order: int) -> None:
    spec = ClassSpec(alpha=math.inf, d=d)
    sampler = TaylorAtZeroSampler(spec, eps)
    f = make_ridge(spec, "sine", [0.3, -1.0, 0.5, 0.2, -0.4, 0.1, 0.7, -0.6][:d])

    error, queries = audited_error(f, sampler)

    assert sampler.order == ridge_taylor_order(eps) == order
    assert sampler.coefficient_count == math.comb(d + order, order)
    assert queries == sampler.budget == stencil_size(d, order)
    assert queries == round(sampler.coefficient_count * sampler.stencil_factor)
    assert error <= eps + 1e-4


def test_factory_sizes_samplers_by_budget() -> None:
    cover = SamplerFactory.create(" Cover ", ClassSpec(alpha=1.0, d=2), 16)
    assert isinstance(cover, CoverSampler)
    assert cover.budget == 16
    assert cover.cover.size <= 16

    smooth = SamplerFactory.create("taylor-zero", ClassSpec(alpha=math.inf, d=2), 50)
    assert isinstance(smooth, TaylorAtZeroSampler)
    assert smooth.order >= 2
    assert stencil_size(2, smooth.order) <= 50

    with pytest.raises(ValueError):
        SamplerFactory.create("simplex", ClassSpec(alpha=1.0, d=2), 16)


def test_default_sampler_per_class() -> None:
    assert SamplerFactory.default_for(ClassSpec(alpha=0.5, d=2)) == "cover"
    assert SamplerFactory.default_for(ClassSpec(alpha=2.0, kappa=0.5, d=2)) == "two-step"
    assert SamplerFactory.default_for(ClassSpec(alpha=2.0, p=1.0, d=2)) == "taylor"
    assert SamplerFactory.default_for(ClassSpec(alpha=math.inf, d=2)) == "taylor-zero"


def test_run_sampler_enforces_budget() -> None:
    sampler = _Repeating(ClassSpec(alpha=1.0, d=2), 3, [0.1, 0.2])
    with pytest.raises(BudgetExceededError):
        run_sampler(sampler, zero_oracle)


def test_run_sampler_enforces_domain_and_dimension() -> None:
    with pytest.raises(DomainError):
        run_sampler(_Repeating(ClassSpec(alpha=1.0, d=2), 3, [1.0, 1.0]), zero_oracle)
    with pytest.raises(ValueError):
        run_sampler(_Repeating(ClassSpec(alpha=1.0, d=2), 3, [0.0, 0.0, 0.0]), zero_oracle)


def test_zero_answers_give_zero_approximant() -> None:
    run = run_sampler(CoverSampler(ClassSpec(alpha=1.0, d=2), 0.5), zero_oracle)

    assert run.approximant.is_zero
    assert run.approximant.provenance.count == run.queries
    assert run.as_dict()["queries_used"] == run.queries


__all__ = [
    "test_cover_sampler_error_within_radius",
    "test_cover_sampler_rejects_smooth_classes",
    "test_default_sampler_per_class",
    "test_factory_sizes_samplers_by_budget",
    "test_run_sampler_enforces_budget",
    "test_run_sampler_enforces_domain_and_dimension",
    "test_taylor_at_zero_on_smooth_ridge",
    "test_two_step_decomposition_sums_to_total",
    "test_two_step_direction_step_at_smallest_budget",
    "test_two_step_preconditions",
    "test_two_step_error_shrinks_with_budget",
    "test_zero_answers_give_zero_approximant",
]
