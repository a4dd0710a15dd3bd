from __future__ import annotations

import math

import numpy as np
import pytest

from ridgelab.services.classes.bump import bump
from ridgelab.services.classes.catalog import (
    GAMMA,
    INTERVAL,
    ProfileFactory,
    ProfileKind,
    bump_centres,
    bump_norm,
    bump_scale,
    catalog_profile,
    certificate,
    fooling_normalizer,
    fooling_profile,
    psi_profile,
    sine_with_bumps,
)
from ridgelab.services.classes.types import ClassSpec, RidgeFunction, strict_floor


def make_spec(alpha: float = 2.0, d: int = 2, **kwargs: float) -> ClassSpec:
    return ClassSpec(alpha=alpha, d=d, **kwargs)


def test_class_spec_derived_exponents() -> None:
    spec = make_spec(2.5, p=1.0)
    assert spec.s == 2
    assert spec.beta == pytest.approx(0.5)
    assert spec.p_prime == math.inf
    assert make_spec(2.0).s == 1
    assert make_spec(2.0).beta == pytest.approx(1.0)
    assert make_spec(2.0, p=1.5).p_prime == pytest.approx(3.0)
    assert make_spec(math.inf).is_smooth
    assert strict_floor(3.0) == 2


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": 0.0},
        {"alpha": 1.0, "p": 2.5},
        {"alpha": 1.0, "kappa": 0.5},
        {"alpha": 2.0, "kappa": 1.5},
        {"alpha": 2.0, "d": 0},
    ],
)
def test_class_spec_rejects_invalid_parameters(kwargs: dict[str, float]) -> None:
    with pytest.raises(ValueError):
        ClassSpec(**kwargs)


def test_bump_value_and_derivative() -> None:
    assert bump(0.0) == pytest.approx(math.exp(-1.0))
    assert bump(np.array([-1.0, 1.0, 2.0])).tolist() == [0.0, 0.0, 0.0]

    h = 1e-6
    x = 0.3
    numeric = (bump(x + h) - bump(x - h)) / (2 * h)
    assert bump(x, 1) == pytest.approx(numeric, rel=1e-6)


def test_fooling_profile_vanishes_at_the_kink() -> None:
    profile = fooling_profile(1.0, 0.5, 1.0)

    assert fooling_normalizer(1.0) == pytest.approx(1.0)
    assert profile(0.875) == 0.0
    assert profile(-1.0) == 0.0
    assert profile(1.0) == pytest.approx(0.125)
    with pytest.raises(ValueError):
        fooling_profile(1.0, 1.5, 1.0)


def test_psi_profile_peak_matches_bump_scale() -> None:
    profile = psi_profile(2, 0.0, 1.0)

    assert bump_scale(1.0) == pytest.approx(1.0 / (5.0 * bump_norm(1.0)))
    assert profile(0.0) == pytest.approx(bump_scale(1.0) * math.exp(-1.0) / 2.0)
    assert profile(0.2) == 0.0


def test_sine_with_bumps_only_perturbs_inside_interval() -> None:
    centres = bump_centres(4)
    profile = sine_with_bumps([1.0], [centres[0]], 4, 1.0)
    peak = math.sin(centres[0]) + (1 - GAMMA) * bump_scale(1.0) * math.exp(-1.0) / 4.0

    assert INTERVAL[0] < centres[0] < centres[-1] < INTERVAL[1]
    assert profile(0.0) == pytest.approx(0.0)
    assert profile(centres[0]) == pytest.approx(peak)
    assert profile(centres[1]) == pytest.approx(math.sin(centres[1]))
    with pytest.raises(ValueError):
        sine_with_bumps([1.0, 1.0], [centres[0], centres[0] + 0.01], 4, 1.0)


def test_ridge_function_evaluation() -> None:
    spec = make_spec(1.0)
    linear = RidgeFunction(np.array([0.6, 0.8]), catalog_profile("linear", spec))
    exponential = RidgeFunction(np.array([0.6, 0.8]), catalog_profile("exp", spec))
    sine = RidgeFunction(np.array([1.0, 0.0]), catalog_profile("sine", make_spec(2.0)))

    assert linear(np.array([0.6, 0.8])) == pytest.approx(1.0)
    assert exponential(np.array([0.4, -0.3])) == pytest.approx(math.exp(-1.0))
    assert sine(np.array([0.5, 0.0])) == pytest.approx(0.4794255386)
    assert np.asarray(sine(np.array([[0.5, 0.0], [0.0, 0.5]]))) == pytest.approx(
        [0.4794255386, 0.0]
    )
    with pytest.raises(ValueError):
        RidgeFunction(np.array([1.0, 1.0]), catalog_profile("linear", spec))


def test_catalog_certificates_normalise_profiles() -> None:
    assert certificate([1.0, 1.0, 3.0], 2.0) == pytest.approx(1.5)
    assert certificate([0.5, 2.0, 0.1], math.inf) == pytest.approx(2.0)

    monomial = catalog_profile("monomial", make_spec(2.0), j=2)
    assert monomial.normalizer == pytest.approx(0.5)
    assert monomial.lip_bound == pytest.approx(1.0)

    sine = catalog_profile(ProfileKind.SINE, make_spec(2.0))
    assert sine.normalizer == 1.0
    assert sine.g0_deriv == pytest.approx(1.0)


def test_smooth_class_rejects_finite_smoothness_profiles() -> None:
    with pytest.raises(ValueError):
        catalog_profile("bump", make_spec(math.inf))
    with pytest.raises(ValueError):
        catalog_profile("constant", make_spec(1.0), c=2.0)


def test_profile_factory_parses_ids() -> None:
    kind, params = ProfileFactory.parse("fooling:anorm=1,eps=0.5,alpha=1")
    assert kind is ProfileKind.FOOLING
    assert params == {"anorm": "1", "eps": "0.5", "alpha": "1"}

    profile = ProfileFactory.create(" Sine-Cubic ", make_spec(2.0))
    assert profile.name == "Sine-Cubic"
    assert profile(0.5) == pytest.approx(math.sin(0.5) - 0.5**3 / 6)

    with pytest.raises(ValueError):
        ProfileFactory.parse("psi:k")
    with pytest.raises(ValueError):
        ProfileFactory.create("wavelet", make_spec(2.0))


def test_profile_algebra() -> None:
    spec = make_spec(2.0)
    sine = catalog_profile("sine", spec)
    linear = catalog_profile("linear", spec)
    combined = sine.plus(linear, weight=0.5)

    assert combined(0.3) == pytest.approx(math.sin(0.3) + 0.15)
    assert combined.g0_deriv == pytest.approx(1.5)
    assert sine.negated()(0.3) == pytest.approx(-math.sin(0.3))
    assert sine.scaled(2.0).lip_bound == pytest.approx(2.0)


__all__ = [
    "test_bump_value_and_derivative",
    "test_catalog_certificates_normalise_profiles",
    "test_class_spec_derived_exponents",
    "test_class_spec_rejects_invalid_parameters",
    "test_fooling_profile_vanishes_at_the_kink",
    "test_profile_algebra",
    "test_profile_factory_parses_ids",
    "test_psi_profile_peak_matches_bump_scale",
    "test_ridge_function_evaluation",
    "test_sine_with_bumps_only_perturbs_inside_interval",
    "test_smooth_class_rejects_finite_smoothness_profiles",
]
