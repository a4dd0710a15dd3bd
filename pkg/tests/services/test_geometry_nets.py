from __future__ import annotations

import math

import numpy as np
import pytest

from ridgelab.core.exceptions import BudgetExceededError
from ridgelab.services.geometry.nets import (
    anchored_cover,
    farthest_first,
    greedy_packing,
    grid_cover,
    sparse_sphere_packing,
)
from ridgelab.services.geometry.norms import p_norm, sample_ball
from ridgelab.services.geometry.types import NetRole, Target
from ridgelab.utils.seeding import spawn_rng


def audit_points(d: int, count: int = 10_000, seed: int = 11) -> np.ndarray:
    return sample_ball(spawn_rng(seed), count, d)


def test_grid_cover_of_interval_uses_two_cells() -> None:
    net = grid_cover(Target.ball(1), 0.5, math.inf)

    assert net.role is NetRole.COVER
    assert sorted(net.centers[:, 0].tolist()) == pytest.approx([-0.5, 0.5])
    assert net.audit(np.linspace(-1.0, 1.0, 201).reshape(-1, 1)) <= 0.5 + 1e-12


@pytest.mark.parametrize(("eps", "max_size"), [(1.0, 5), (0.5, 25)])
def test_grid_cover_of_disc_passes_audit(eps: float, max_size: int) -> None:
    net = grid_cover(Target.ball(2), eps, 2.0)

    assert net.size <= max_size
    assert net.audit(audit_points(2)) <= eps + 1e-12


def test_grid_cover_guards_against_overflow() -> None:
    with pytest.raises(BudgetExceededError):
        grid_cover(Target.ball(3), 0.01, 2.0, max_centers=100)
    with pytest.raises(ValueError):
        grid_cover(Target.ball(2), 0.0, 2.0)


def test_anchored_cover_keeps_anchors_in_the_ball() -> None:
    cover = anchored_cover(2, 0.5, 2.0)
    points = audit_points(2, 5000)
    cells = cover.assign(points)

    assert np.all(np.linalg.norm(cover.anchors, axis=1) <= 1.0 + 1e-12)
    assert np.max(np.linalg.norm(points - cover.anchors[cells], axis=1)) <= 0.5 + 1e-9


def test_greedy_packing_keeps_all_signed_basis_vectors() -> None:
    basis = np.vstack([np.eye(5), -np.eye(5)])
    net = greedy_packing(basis, 1.0, 2.0)

    assert net.role is NetRole.PACKING
    assert net.size == 10
    assert net.min_separation() == pytest.approx(math.sqrt(2.0))


def test_greedy_packing_on_circle_keeps_three_points() -> None:
    angles = np.linspace(0.0, 2.0 * math.pi, 1001, endpoint=False)
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    net = greedy_packing(circle, math.sqrt(2.0), 2.0, target=Target.sphere(2))

    assert net.size == 3
    assert net.min_separation() > math.sqrt(2.0)


def test_greedy_packing_of_empty_source_is_empty() -> None:
    net = greedy_packing(np.empty((0, 2)), 0.5, 2.0)
    assert net.size == 0


def test_greedy_packing_is_deterministic_given_seed() -> None:
    first = greedy_packing(Target.sphere(3), 0.5, 2.0, 200, seed=5)
    second = greedy_packing(Target.sphere(3), 0.5, 2.0, 200, seed=5)

    assert np.array_equal(first.centers, second.centers)
    assert first.min_separation() > 0.5


def test_sparse_sphere_packing_reports_cardinality() -> None:
    full = sparse_sphere_packing(8, 8)
    assert full.size >= 1
    assert full.metadata["target_size"] == pytest.approx((8 / 32) ** 4)
    assert full.metadata["shortfall"] == 0

    sparse = sparse_sphere_packing(16, 2, seed=3)
    assert sparse.min_separation() > 1.0 / math.sqrt(2.0)
    assert np.allclose(np.linalg.norm(sparse.centers, axis=1), 1.0)
    assert np.all(np.count_nonzero(sparse.centers, axis=1) == 2)


def test_farthest_first_radius_bounds_the_cover() -> None:
    points = audit_points(2, 300, seed=2)
    chosen, radius = farthest_first(points, 8, 2.0)
    distances = np.min(
        p_norm(points[:, None, :] - points[chosen][None, :, :], 2.0, axis=2), axis=1
    )

    assert chosen.size == 8
    assert np.max(distances) == pytest.approx(radius)


__all__ = [
    "test_anchored_cover_keeps_anchors_in_the_ball",
    "test_farthest_first_radius_bounds_the_cover",
    "test_greedy_packing_is_deterministic_given_seed",
    "test_greedy_packing_keeps_all_signed_basis_vectors",
    "test_greedy_packing_of_empty_source_is_empty",
    "test_greedy_packing_on_circle_keeps_three_points",
    "test_grid_cover_guards_against_overflow",
    "test_grid_cover_of_disc_passes_audit",
    "test_grid_cover_of_interval_uses_two_cells",
    "test_sparse_sphere_packing_reports_cardinality",
]
