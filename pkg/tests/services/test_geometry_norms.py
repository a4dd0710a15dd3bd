from __future__ import annotations

import math

import numpy as np
import pytest

from ridgelab.core.exceptions import DomainError
from ridgelab.services.geometry.norms import (
    NormSpec,
    ensure_in_domain,
    nearest_centers,
    normalize,
    p_norm,
    sample_ball,
    sample_sphere,
)
from ridgelab.utils.seeding import spawn_rng


def test_p_norm_matches_closed_forms() -> None:
    assert p_norm(np.array([3.0, 4.0]), 2.0) == pytest.approx(5.0)
    assert p_norm(np.array([1.0, 1.0, 1.0, 1.0]), 1.0) == pytest.approx(4.0)
    assert p_norm(np.array([1.0, 1.0]), 0.5) == pytest.approx(4.0)
    assert p_norm(np.array([-2.0, 1.0]), math.inf) == pytest.approx(2.0)
    assert NormSpec(1.0)(np.array([1.0, -1.0])) == pytest.approx(2.0)


def test_p_norm_rejects_empty_vectors_and_bad_exponents() -> None:
    with pytest.raises(ValueError):
        p_norm(np.array([]), 2.0)
    with pytest.raises(ValueError):
        NormSpec(0.0)


def test_quasi_norm_satisfies_p_triangle_inequality() -> None:
    rng = spawn_rng(3)
    p = 0.5
    x = rng.standard_normal((500, 4))
    y = rng.standard_normal((500, 4))
    lhs = p_norm(x + y, p, axis=1) ** p
    rhs = p_norm(x, p, axis=1) ** p + p_norm(y, p, axis=1) ** p
    assert np.all(lhs <= rhs + 1e-9)


def test_samplers_stay_on_their_sets() -> None:
    rng = spawn_rng(7)
    for p in (0.5, 1.0, 2.0, math.inf):
        ball = sample_ball(rng, 200, 3, p)
        sphere = sample_sphere(rng, 200, 3, p)
        assert np.all(p_norm(ball, p, axis=1) <= 1.0 + 1e-12)
        assert np.allclose(p_norm(sphere, p, axis=1), 1.0)


def test_nearest_centers_breaks_ties_by_lowest_index() -> None:
    centers = np.array([[1.0, 0.0], [-1.0, 0.0]])
    indices, distances = nearest_centers(np.array([[0.0, 0.0], [-0.9, 0.0]]), centers, 2.0)
    assert indices.tolist() == [0, 1]
    assert distances == pytest.approx([1.0, 0.1])


def test_ensure_in_domain_and_normalize() -> None:
    ensure_in_domain(np.array([[0.6, 0.8]]))
    with pytest.raises(DomainError):
        ensure_in_domain(np.array([[0.8, 0.8]]))
    assert normalize(np.array([3.0, 4.0])) == pytest.approx([0.6, 0.8])
    with pytest.raises(ValueError):
        normalize(np.zeros(3))


__all__ = [
    "test_ensure_in_domain_and_normalize",
    "test_nearest_centers_breaks_ties_by_lowest_index",
    "test_p_norm_matches_closed_forms",
    "test_p_norm_rejects_empty_vectors_and_bad_exponents",
    "test_quasi_norm_satisfies_p_triangle_inequality",
    "test_samplers_stay_on_their_sets",
]
