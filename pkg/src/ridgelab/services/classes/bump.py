"""The smooth bump φ(x) = exp(−1/(1−x²)) on (−1, 1) and its derivatives."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

# exp(−1/u) underflows long before the rational prefactor matters.
_SUPPORT_FLOOR = 1.0 / 700.0


@lru_cache(maxsize=None)
def _derivative_polynomial(order: int) -> Polynomial:
    """P_j with φ^{(j)}(x) = P_j(x) φ(x) / (1 − x²)^{2j}."""

    if order == 0:
        return Polynomial([1.0])
    previous = _derivative_polynomial(order - 1)
    x = Polynomial([0.0, 1.0])
    u = Polynomial([1.0, 0.0, -1.0])
    j = order - 1
    return previous.deriv() * u * u - 2.0 * x * previous + 4.0 * j * x * u * previous


def bump(x: np.ndarray | float, order: int = 0) -> np.ndarray:
    """φ^{(order)} evaluated elementwise; zero outside (−1, 1)."""

    original = np.asarray(x, dtype=float)
    array = np.atleast_1d(original)
    u = 1.0 - array * array
    result = np.zeros_like(array)
    inside = u > _SUPPORT_FLOOR
    if np.any(inside):
        ui = u[inside]
        base = np.exp(-1.0 / ui)
        if order == 0:
            result[inside] = base
        else:
            poly = _derivative_polynomial(order)
            result[inside] = poly(array[inside]) * base / ui ** (2 * order)
    return result.reshape(original.shape)


@lru_cache(maxsize=None)
def bump_sup(order: int, grid_size: int = 200_001) -> float:
    """sup |φ^{(order)}| estimated on a dense grid (exact at the origin for order 0)."""

    grid = np.linspace(-1.0, 1.0, grid_size)
    return float(np.max(np.abs(bump(grid, order))))


__all__ = ["bump", "bump_sup"]
