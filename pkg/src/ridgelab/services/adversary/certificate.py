"""Run a sampler against a fooling pair ±f and certify the worst-case error floor."""

from __future__ import annotations

import logging
import math

import numpy as np

from ...core.config import get_settings
from ...core.exceptions import ClassMismatchError
from ..algorithms.types import AdaptiveSampler, as_oracle, run_sampler, zero_oracle
from ..geometry.entropy import entropy_estimate
from ..geometry.types import Target
from ..harness.audit import sup_error_estimate
from .fooling import fooling_floor, fooling_ridge
from .types import Certificate, CertificateStatus, DirectionSet

logger = logging.getLogger(__name__)

# Strictly below the estimated entropy number.
_EPS_SHRINK = 1.0 - 1e-6


def default_certificate_eps(dirs: DirectionSet, n: int, *, seed: int | None = None) -> float:
    """Packing lower bracket of e_k(Ψ(M), ℓ₂^d) with k = ⌈log₂ n⌉ + 1, shrunk slightly."""

    k = math.ceil(math.log2(max(n, 1))) + 1
    estimate = entropy_estimate(Target.finite(dirs.psi()), k, 2.0, seed=seed)
    return min(estimate.lower * _EPS_SHRINK, _EPS_SHRINK)


def certify_lower_bound(
    sampler: AdaptiveSampler,
    dirs: DirectionSet,
    eps: float | None = None,
    alpha: float | None = None,
    *,
    tol: float = 1e-3,
    seed: int | None = None,
) -> Certificate:
    """Extract the sampler's zero-function trajectory, fool it and replay it on f and −f.

    Both replays see only zero answers, so they return the same approximant; the larger of the two
    errors is at least ‖f‖∞, the certified floor.
    """

    spec = sampler.spec
    if spec.kappa > 0:
        msg = "Fooling profiles have g'(0) = 0 and do not belong to classes with kappa > 0"
        raise ClassMismatchError(msg)
    if spec.is_smooth:
        msg = "No fooling profile exists for the C-infinity class"
        raise ClassMismatchError(msg)
    if dirs.d != spec.d:
        msg = f"Direction set dimension {dirs.d} does not match the class dimension {spec.d}"
        raise ValueError(msg)
    alpha = spec.alpha if alpha is None else alpha
    seed = get_settings().default_seed if seed is None else seed
    if eps is None:
        eps = default_certificate_eps(dirs, sampler.budget, seed=seed)

    zero_run = run_sampler(sampler, zero_oracle)
    base = {
        "sampler": sampler.name,
        "budget": sampler.budget,
        "eps": eps,
        "alpha": alpha,
        "p": dirs.p,
        "d": spec.d,
        "queries": zero_run.queries,
        "tolerance": tol,
    }
    if not 0 < eps < 1:
        return Certificate(
            status=CertificateStatus.INCONCLUSIVE, reason="no admissible eps in (0, 1)", **base
        )

    f = fooling_ridge(zero_run.points, dirs, eps, alpha)
    if f is None:
        logger.info("Certificate for %s inconclusive: no direction escapes", sampler.name)
        return Certificate(
            status=CertificateStatus.INCONCLUSIVE,
            reason="every direction is within eps of a query",
            **base,
        )

    minus = f.negated()
    run_plus = run_sampler(sampler, as_oracle(f))
    run_minus = run_sampler(sampler, as_oracle(minus))
    fingerprints = (run_plus.approximant.fingerprint(), run_minus.approximant.fingerprint())
    identical = fingerprints[0] == fingerprints[1]
    values_zero = bool(
        np.all(run_plus.values == 0.0)
        and np.all(run_minus.values == 0.0)
        and np.array_equal(run_plus.points, zero_run.points)
    )
    achieved = max(
        sup_error_estimate(f, run_plus.approximant, spec.d, seed=seed).value,
        sup_error_estimate(minus, run_minus.approximant, spec.d, seed=seed).value,
    )
    floor = fooling_floor(f.direction, eps, alpha)
    passed = identical and values_zero and achieved >= floor - tol
    status = CertificateStatus.PASSED if passed else CertificateStatus.FAILED
    logger.info(
        "Certificate for %s: %s (achieved %.6g, floor %.6g)",
        sampler.name,
        status.value,
        achieved,
        floor,
    )
    return Certificate(
        status=status,
        floor=floor,
        achieved=achieved,
        direction=f.direction.tolist(),
        fingerprints=fingerprints,
        identical_outputs=identical,
        query_values_zero=values_zero,
        **base,
    )


__all__ = ["certify_lower_bound", "default_certificate_eps"]
