import math

import numpy as np
import pytest

from stablekit import (
    DomainError, EllipticalParams, Form, MixtureSpec, NotPositiveDefinite,
    SpecialCase, SpectralMeasure, StableParams, convert_form, special_case,
    validate,
)


def test_validate_accepts_reference_parameters():
    validate(StableParams(1.3, 0.5, 2.0, 0.0, Form.S0))


def test_validate_rejects_alpha_out_of_range():
    with pytest.raises(DomainError, match="alpha"):
        validate(StableParams(2.1, 0.0, 1.0, 0.0, Form.S0))


def test_validate_rejects_nonpositive_sigma():
    with pytest.raises(DomainError, match="sigma"):
        validate(StableParams(1.0, 0.0, -1.0, 0.0, Form.S1))


def test_validate_rejects_nonfinite_fields():
    with pytest.raises(DomainError):
        validate(StableParams(1.5, 0.0, 1.0, math.nan, Form.S0))
    with pytest.raises(DomainError, match="beta"):
        validate(StableParams(1.5, 1.2, 1.0, 0.0, Form.S0))


def test_validate_interval_cross_product():
    """Acceptance matches the declared field intervals exactly."""
    g = np.random.default_rng(11)
    for _ in range(300):
        a = g.uniform(-0.5, 2.5)
        b = g.uniform(-1.5, 1.5)
        s = g.uniform(-0.5, 2.0)
        ok = (0.0 < a <= 2.0) and (abs(b) <= 1.0) and (s > 0.0)
        p = StableParams(a, b, s, float(g.normal()), Form.S0)
        if ok:
            validate(p)
        else:
            with pytest.raises(DomainError):
                validate(p)


def test_convert_symmetric_location_unchanged():
    for a in (0.6, 1.0, 1.4, 2.0):
        p = StableParams(a, 0.0, 3.0, 5.0, Form.S0)
        assert convert_form(p, Form.S1).mu == 5.0


def test_convert_alpha_one_unit_scale_unchanged():
    p = StableParams(1.0, 0.7, 1.0, 2.5, Form.S0)
    assert convert_form(p, Form.S1).mu == 2.5


def test_convert_location_shift_value():
    p = convert_form(StableParams(1.3, 0.5, 2.0, 0.0, Form.S0), Form.S1)
    assert p.mu == pytest.approx(-2 * 0.5 * math.tan(0.65 * math.pi), abs=1e-12)
    assert (p.alpha, p.beta, p.sigma) == (1.3, 0.5, 2.0)


def test_convert_alpha_one_uses_log_shift():
    p = convert_form(StableParams(1.0, 0.7, 3.0, 1.0, Form.S0), Form.S1)
    assert p.mu == pytest.approx(1.0 - 0.7 * (2 / math.pi) * 3.0 * math.log(3.0),
                                 abs=1e-12)


def test_convert_roundtrip_is_identity():
    g = np.random.default_rng(3)
    for _ in range(200):
        a = float(g.uniform(0.05, 2.0))
        p = StableParams(a, float(g.uniform(-1, 1)),
                         float(g.uniform(0.1, 10)), float(g.normal()), Form.S0)
        q = convert_form(convert_form(p, Form.S1), Form.S0)
        assert abs(q.mu - p.mu) < 1e-12 * max(1.0, abs(p.mu))
        assert (q.alpha, q.beta, q.sigma) == (p.alpha, p.beta, p.sigma)


def test_convert_symmetric_bit_identical():
    p = StableParams(1.7, 0.0, 2.5, -3.25, Form.S1)
    q = convert_form(p, Form.S0)
    assert (q.alpha, q.beta, q.sigma, q.mu) == (p.alpha, p.beta, p.sigma, p.mu)


def test_convert_noop_when_target_matches():
    p = StableParams(1.7, 0.3, 2.0, 1.0, Form.S0)
    assert convert_form(p, Form.S0) == p


def test_special_case_table():
    assert special_case(StableParams(2.0, 0.3, 1.0, 0.0)) is SpecialCase.GAUSSIAN
    assert special_case(StableParams(1.0, 0.0, 1.0, 0.0)) is SpecialCase.CAUCHY
    assert special_case(StableParams(0.5, -1.0, 1.0, 0.0)) is SpecialCase.LEVY
    assert (special_case(StableParams(0.7, 1.0, 1.0, 0.0))
            is SpecialCase.POSITIVE_STABLE)
    assert special_case(StableParams(1.5, 0.5, 1.0, 0.0)) is SpecialCase.GENERAL
    # beta=1 only counts as positive stable below alpha=1
    assert special_case(StableParams(1.3, 1.0, 1.0, 0.0)) is SpecialCase.GENERAL


def test_alpha_near_one_is_snapped():
    p = StableParams(1.0 + 4e-10, 0.5, 1.0, 0.0, Form.S0)
    assert p.alpha == 1.0


def test_mixture_weights_must_sum_to_one():
    c = (StableParams(1.5, 0.0, 1.0, 0.0), StableParams(1.5, 0.0, 1.0, 1.0))
    validate(MixtureSpec((0.4, 0.6), c))
    with pytest.raises(DomainError):
        validate(MixtureSpec((0.4, 0.5), c))
    with pytest.raises(DomainError):
        validate(MixtureSpec((-0.1, 1.1), c))


def test_elliptical_requires_positive_definite_sigma():
    validate(EllipticalParams(1.5, np.array([[2.0, 0.5], [0.5, 1.0]]),
                              np.zeros(2)))
    with pytest.raises(NotPositiveDefinite):
        validate(EllipticalParams(1.5, np.array([[1.0, 2.0], [2.0, 1.0]]),
                                  np.zeros(2)))


def test_spectral_measure_invariants():
    pts = np.array([[1.0, 0.0], [0.0, 1.0]])
    validate(SpectralMeasure(1.3, pts, np.array([0.5, 0.5]), np.zeros(2)))
    with pytest.raises(DomainError):
        validate(SpectralMeasure(1.0, pts, np.array([0.5, 0.5]), np.zeros(2)))
    with pytest.raises(DomainError):
        validate(SpectralMeasure(1.3, 2 * pts, np.array([0.5, 0.5]),
                                 np.zeros(2)))
    with pytest.raises(DomainError):
        validate(SpectralMeasure(1.3, pts, np.array([0.0, 0.0]), np.zeros(2)))
