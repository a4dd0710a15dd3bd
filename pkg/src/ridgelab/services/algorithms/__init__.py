"""Adaptive sampling algorithms and the approximants they return."""

from .recovery import RecoveredDirection, direction_dialogue, recover_direction
from .samplers import (
    CoverSampler,
    SamplerFactory,
    TaylorAtZeroSampler,
    TaylorCoverSampler,
    TwoStepSampler,
    cover_sampler,
    taylor_at_zero_sampler,
    taylor_cover_sampler,
    two_step_decomposition,
    two_step_sampler,
)
from .taylor import multi_indices, plan_stencil, taylor_coeffs_fd, taylor_dialogue
from .types import (
    AdaptiveSampler,
    Approximant,
    ApproximantForm,
    RecoveryParams,
    RidgeApproximant,
    SamplerRun,
    TaylorModel,
    as_oracle,
    run_sampler,
    zero_oracle,
)
from .univariate import PiecewisePolynomial, univariate_sampler

__all__ = [
    "AdaptiveSampler",
    "Approximant",
    "ApproximantForm",
    "CoverSampler",
    "PiecewisePolynomial",
    "RecoveredDirection",
    "RecoveryParams",
    "RidgeApproximant",
    "SamplerFactory",
    "SamplerRun",
    "TaylorAtZeroSampler",
    "TaylorCoverSampler",
    "TaylorModel",
    "TwoStepSampler",
    "as_oracle",
    "cover_sampler",
    "direction_dialogue",
    "multi_indices",
    "plan_stencil",
    "recover_direction",
    "run_sampler",
    "taylor_at_zero_sampler",
    "taylor_coeffs_fd",
    "taylor_cover_sampler",
    "taylor_dialogue",
    "two_step_decomposition",
    "two_step_sampler",
    "univariate_sampler",
    "zero_oracle",
]
