from __future__ import annotations

import math

import numpy as np
import pytest

from ridgelab.core.exceptions import BudgetExceededError
from ridgelab.services.geometry.entropy import (
    entropy_estimate,
    entropy_profile,
    exact_finite_entropy,
    finite_covering_number,
    finite_packing_number,
    ridge_entropy_bracket,
    ridge_entropy_threshold,
    schuett_bound,
    sphere_entropy_bound,
)
from ridgelab.services.geometry.types import Target


def column(*values: float) -> np.ndarray:
    return np.array(values, dtype=float).reshape(-1, 1)


def test_schuett_bound_regimes() -> None:
    assert schuett_bound(1.0, 2.0, 4, 16) == 1.0
    assert schuett_bound(1.0, 2.0, 8, 16) == pytest.approx(math.sqrt(math.log2(3.0) / 8.0))
    assert schuett_bound(1.0, 2.0, 32, 16) == pytest.approx(2.0**-2 * 16**-0.5)
    assert schuett_bound(2.0, 2.0, 6, 3) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        schuett_bound(2.0, 1.0, 4, 4)


def test_sphere_envelopes_split_only_for_quasi_norms() -> None:
    below = sphere_entropy_bound(0.5, 2.0, 3, 8)
    assert below[0] == below[1] == pytest.approx(schuett_bound(0.5, 2.0, 3, 8))

    lower, upper = sphere_entropy_bound(0.5, 2.0, 8, 4)
    assert lower < upper
    assert sphere_entropy_bound(1.0, 2.0, 8, 4)[0] == pytest.approx(
        sphere_entropy_bound(1.0, 2.0, 8, 4)[1]
    )
    with pytest.raises(ValueError):
        sphere_entropy_bound(2.0, 2.0, 3, 1)


def test_entropy_estimate_of_ball_at_first_index_is_one() -> None:
    estimate = entropy_estimate(Target.ball(3), 1, 2.0)

    assert estimate.upper == pytest.approx(1.0)
    assert 0.0 < estimate.lower <= estimate.upper


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_entropy_estimate_of_interval_is_exact(k: int) -> None:
    for q in (1.0, 2.0, math.inf):
        estimate = entropy_estimate(Target.ball(1), k, q, seed=1)

        assert estimate.method == "interval:exact"
        assert estimate.lower == estimate.upper == pytest.approx(2.0 ** (1 - k))


def test_entropy_estimate_in_four_dimensions_is_close_to_rate() -> None:
    estimate = entropy_estimate(Target.ball(4), 8, 2.0, seed=2)

    assert 0.25 / 8 <= estimate.lower <= estimate.upper <= 0.25 * 8


def test_entropy_profile_is_monotone_in_k() -> None:
    estimates = entropy_profile(Target.ball(2), [1, 2, 3, 4, 5], 2.0, seed=4)
    uppers = [estimate.upper for estimate in estimates]
    lowers = [estimate.lower for estimate in estimates]

    assert uppers == sorted(uppers, reverse=True)
    assert lowers == sorted(lowers, reverse=True)
    assert all(estimate.lower <= estimate.upper for estimate in estimates)


def test_entropy_estimate_guards_enumeration() -> None:
    with pytest.raises(BudgetExceededError):
        entropy_estimate(Target.ball(2), 40, 2.0, max_centers=1000)
    with pytest.raises(ValueError):
        entropy_estimate(Target.ball(2), 0, 2.0)


def test_finite_targets_use_exhaustive_search() -> None:
    points = column(0.0, 1.0, 2.0, 3.0)
    estimate = entropy_estimate(Target.finite(points), 2, math.inf)

    assert estimate.method == "finite:exhaustive"
    assert estimate.lower == estimate.upper == pytest.approx(0.5)
    assert exact_finite_entropy(points, 1, math.inf) == pytest.approx(1.5)
    assert exact_finite_entropy(points, 3, math.inf) == 0.0


def test_exhaustive_search_in_euclidean_norm() -> None:
    square = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]) / math.sqrt(2.0)
    estimate = entropy_estimate(Target.finite(square), 2, 2.0)

    assert estimate.method == "finite:exhaustive"
    assert estimate.lower == estimate.upper == pytest.approx(math.sqrt(2.0) / 2)
    assert exact_finite_entropy(square, 1, 2.0) == pytest.approx(1.0)
    assert exact_finite_entropy(square, 3, 2.0) == 0.0

    obtuse = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, 0.2]])
    assert exact_finite_entropy(obtuse, 1, 2.0) == pytest.approx(1.0)
    assert finite_covering_number(obtuse, 0.99, 2.0) == 2


def test_exhaustive_search_in_manhattan_norm() -> None:
    square = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]) / math.sqrt(2.0)

    assert exact_finite_entropy(square, 1, 1.0) == pytest.approx(math.sqrt(2.0), abs=1e-7)
    assert exact_finite_entropy(square, 2, 1.0) == pytest.approx(math.sqrt(2.0) / 2, abs=1e-7)
    assert finite_covering_number(square, 0.5, 1.0) == 4


def test_exhaustive_search_rejects_other_norms() -> None:
    points = np.array([[0.0, 0.0], [1.0, 1.0]])

    with pytest.raises(ValueError):
        exact_finite_entropy(points, 1, 3.0)


def test_packing_covering_duality_on_small_sets() -> None:
    points = column(0.0, 0.3, 1.0, 1.7, 2.0, 3.1)
    for eps in (0.2, 0.5, 0.8):
        packing_wide = finite_packing_number(points, 2 * eps, math.inf)
        covering = finite_covering_number(points, eps, math.inf)
        packing = finite_packing_number(points, eps, math.inf)
        assert packing_wide <= covering <= packing


def test_large_finite_targets_use_farthest_first() -> None:
    angles = np.linspace(0.0, 2.0 * math.pi, 20, endpoint=False)
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    estimate = entropy_estimate(Target.finite(circle), 3, 2.0)

    assert estimate.method == "finite:farthest-first"
    assert estimate.lower == pytest.approx(estimate.upper / 2)


def test_ridge_entropy_bracket_is_ordered() -> None:
    for k in (1, 4, 16, 64):
        lower, upper = ridge_entropy_bracket(k, 8, 2.0, 1.0)
        assert 0.0 < lower <= upper
    assert ridge_entropy_threshold(16) == pytest.approx(64.0)


__all__ = [
    "test_entropy_estimate_guards_enumeration",
    "test_entropy_estimate_in_four_dimensions_is_close_to_rate",
    "test_entropy_estimate_of_ball_at_first_index_is_one",
    "test_entropy_estimate_of_interval_is_exact",
    "test_entropy_profile_is_monotone_in_k",
    "test_exhaustive_search_in_euclidean_norm",
    "test_exhaustive_search_in_manhattan_norm",
    "test_exhaustive_search_rejects_other_norms",
    "test_finite_targets_use_exhaustive_search",
    "test_large_finite_targets_use_farthest_first",
    "test_packing_covering_duality_on_small_sets",
    "test_ridge_entropy_bracket_is_ordered",
    "test_schuett_bound_regimes",
    "test_sphere_envelopes_split_only_for_quasi_norms",
]
