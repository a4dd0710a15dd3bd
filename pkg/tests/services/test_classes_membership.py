from __future__ import annotations

import numpy as np
import pytest

from ridgelab.services.classes.catalog import catalog_profile, fooling_profile
from ridgelab.services.classes.membership import (
    holder_quotient,
    membership_check,
    seminorm_estimate,
)
from ridgelab.services.classes.types import ClassSpec, RidgeFunction


def make_ridge(direction: list[float], profile_id: str, spec: ClassSpec, **params: float):
    return RidgeFunction(np.array(direction), catalog_profile(profile_id, spec, **params), spec.p)


def test_seminorm_estimate_of_identity_and_zero() -> None:
    spec = ClassSpec(alpha=1.0, d=1)

    assert seminorm_estimate(catalog_profile("linear", spec)) == pytest.approx(1.0)
    assert seminorm_estimate(catalog_profile("zero", spec)) == 0.0


def test_holder_quotient_of_linear_values() -> None:
    grid = np.linspace(-1.0, 1.0, 101)
    assert holder_quotient(grid, grid, 1.0) == pytest.approx(1.0)
    assert holder_quotient(grid, np.zeros_like(grid), 0.5) == 0.0


def test_linear_ridge_with_unit_direction_is_a_member() -> None:
    spec = ClassSpec(alpha=1.0, d=2)
    report = membership_check(make_ridge([0.6, 0.8], "linear", spec), spec, trials=500, seed=1)

    assert report.passed
    assert report.checks > 0
    assert report.witnesses == []


def test_fooling_ridge_is_a_member() -> None:
    spec = ClassSpec(alpha=1.0, d=3)
    f = RidgeFunction(np.array([1.0, 0.0, 0.0]), fooling_profile(1.0, 0.5, 1.0))
    report = membership_check(f, spec, trials=5000, seed=2)

    assert report.passed


def test_scaled_profile_fails_with_witness() -> None:
    spec = ClassSpec(alpha=1.0, d=2)
    f = make_ridge([0.6, 0.8], "linear", spec).scaled(1.5)
    report = membership_check(f, spec, trials=500, seed=3)

    assert not report.passed
    assert report.witnesses
    assert report.worst_ratio >= 1.5 - 1e-9
    assert report.as_dict()["witnesses"][0]["lhs"] > 1.0


def test_derivative_floor_is_checked_at_origin() -> None:
    spec = ClassSpec(alpha=2.0, kappa=0.5, d=2)

    assert membership_check(make_ridge([1.0, 0.0], "sine", spec), spec, trials=200).passed
    failing = membership_check(make_ridge([1.0, 0.0], "monomial", spec, j=2), spec, trials=200)
    assert not failing.passed
    assert any(witness.check == "kappa" for witness in failing.witnesses)


def test_overlong_direction_fails_the_direction_check() -> None:
    spec = ClassSpec(alpha=1.0, p=1.0, d=2)
    f = make_ridge([0.6, 0.8], "sine", ClassSpec(alpha=1.0, d=2))
    report = membership_check(f, spec, trials=100)

    assert not report.passed
    assert report.witnesses[0].check == "direction"


__all__ = [
    "test_derivative_floor_is_checked_at_origin",
    "test_fooling_ridge_is_a_member",
    "test_holder_quotient_of_linear_values",
    "test_linear_ridge_with_unit_direction_is_a_member",
    "test_overlong_direction_fails_the_direction_check",
    "test_scaled_profile_fails_with_witness",
    "test_seminorm_estimate_of_identity_and_zero",
]
