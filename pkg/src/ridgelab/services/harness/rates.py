"""Empirical convergence rates from (n, error) pairs."""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)

MIN_PAIRS = 3


@dataclass(slots=True)
class RateFit:
    """Least squares of log e on log n: e ≈ exp(intercept) n^slope."""

    ns: list[float]
    errors: list[float]
    slope: float
    intercept: float
    residual: float
    r_value: float

    def within(self, low: float, high: float) -> bool:
        return low <= self.slope <= high

    def as_dict(self) -> dict[str, Any]:
        return {
            "pairs": [[n, e] for n, e in zip(self.ns, self.errors)],
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "r_value": self.r_value,
        }


def rate_fit(pairs: Iterable[tuple[float, float]]) -> RateFit:
    """Fit the log-log slope; pairs with non-positive error are dropped first."""

    cleaned = [(float(n), float(e)) for n, e in pairs if n > 0 and e > 0 and math.isfinite(e)]
    if len(cleaned) < MIN_PAIRS:
        msg = f"Rate fit needs at least {MIN_PAIRS} pairs with positive error, got {len(cleaned)}"
        raise ValueError(msg)
    cleaned.sort()
    ns = np.array([n for n, _ in cleaned])
    errors = np.array([e for _, e in cleaned])
    log_n, log_e = np.log(ns), np.log(errors)
    if np.ptp(log_n) == 0:
        msg = "Rate fit needs at least two distinct budgets"
        raise ValueError(msg)
    result = stats.linregress(log_n, log_e)
    predicted = result.intercept + result.slope * log_n
    residual = float(np.sqrt(np.mean((log_e - predicted) ** 2)))
    return RateFit(
        ns=ns.tolist(),
        errors=errors.tolist(),
        slope=float(result.slope),
        intercept=float(result.intercept),
        residual=residual,
        r_value=float(result.rvalue) if np.ptp(log_e) > 0 else 0.0,
    )


def read_pairs_csv(
    path: Path, *, x_column: str = "n", y_column: str = "error"
) -> list[tuple[float, float]]:
    """Read (n, error) pairs from a CSV, keeping the worst error per n (catalog worst-case)."""

    worst: dict[float, float] = {}
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or {x_column, y_column} - set(reader.fieldnames):
            msg = f"{path} needs columns '{x_column}' and '{y_column}'"
            raise ValueError(msg)
        for row in reader:
            n = float(row[x_column])
            error = float(row[y_column])
            worst[n] = max(worst.get(n, -math.inf), error)
    logger.debug("Read %d budgets from %s", len(worst), path)
    return sorted(worst.items())


__all__ = ["MIN_PAIRS", "RateFit", "rate_fit", "read_pairs_csv"]
