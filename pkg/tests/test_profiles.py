"""Periodic decrement profiles and the protection laws they encode."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protincome import (
    DifferenceLaw,
    ElasticityLaw,
    FractionLaw,
    PeriodicProfile,
    ProfileError,
)

LN2 = math.log(2.0)


def wavy(length, amplitude=0.15):
    # endpoints pinned to the chord; interior bowed
    def g(x):
        t = x / length
        return -LN2 * t + amplitude * math.sin(math.pi * t) * LN2

    return PeriodicProfile.from_function(g, length, resolution=65)


# -- construction and validation -------------------------------------------------


def test_linear_profile_shape():
    p = PeriodicProfile.linear(LN2)
    assert p.positions[0] == 0.0
    assert p.positions[-1] == pytest.approx(LN2)
    assert p.values[0] == 0.0
    assert p.values[-1] == pytest.approx(-LN2)
    assert p.is_linear
    assert p.interval_length == pytest.approx(LN2)


def test_from_function_pins_endpoints():
    p = wavy(2.0)
    assert p.values[0] == 0.0
    assert p.values[-1] == pytest.approx(-LN2)
    assert not p.is_linear


def test_rejects_nonzero_first_position():
    with pytest.raises(ProfileError):
        PeriodicProfile((0.5, 1.0), (0.0, -LN2), LN2)


def test_rejects_nonmonotone_positions():
    with pytest.raises(ProfileError):
        PeriodicProfile((0.0, 0.6, 0.5, 1.0), (0.0, -0.2, -0.4, -LN2), LN2)


def test_rejects_nondecreasing_values():
    with pytest.raises(ProfileError):
        PeriodicProfile((0.0, 0.5, 1.0), (0.0, 0.1, -LN2), LN2)


def test_rejects_wrong_total_drop():
    with pytest.raises(ProfileError):
        PeriodicProfile((0.0, 1.0), (0.0, -0.5), LN2)


def test_rejects_short_knot_list():
    with pytest.raises(ProfileError):
        PeriodicProfile((0.0,), (0.0,), LN2)


# -- evaluation -------------------------------------------------------------------


def test_knots_are_reproduced():
    p = PeriodicProfile((0.0, 0.25, 1.0), (0.0, -0.4, -LN2), LN2)
    assert p.g(0.0) == 0.0
    assert p.g(0.25) == pytest.approx(-0.4)
    assert p.g(1.0) == pytest.approx(-LN2)


def test_interpolation_midpoint():
    p = PeriodicProfile.linear(1.0)
    assert p.g(0.5) == pytest.approx(-LN2 / 2.0)


def test_periodic_extension():
    p = wavy(1.5)
    for x in (0.1, 0.77, 1.2):
        for k in (-3, -1, 1, 2, 7):
            assert p.g(x + k * 1.5) == pytest.approx(p.g(x) - k * LN2, abs=1e-12)


def test_negative_argument_extension():
    p = PeriodicProfile.linear(LN2)
    assert p.g(-LN2) == pytest.approx(LN2)


# -- inversion --------------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(x=st.floats(min_value=-40.0, max_value=40.0, allow_nan=False))
def test_inverse_round_trip_linear(x):
    p = PeriodicProfile.linear(LN2)
    assert p.g_inverse(p.g(x)) == pytest.approx(x, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(min_value=-30.0, max_value=30.0, allow_nan=False))
def test_inverse_round_trip_nonlinear(x):
    p = wavy(2.0)
    assert p.g_inverse(p.g(x)) == pytest.approx(x, abs=1e-9)


def test_inverse_hits_cell_boundaries():
    p = wavy(1.0)
    for k in (-2, 0, 1, 5):
        target = -k * LN2
        assert p.g_inverse(target) == pytest.approx(float(k), abs=1e-9)


def test_inverse_far_from_origin():
    p = PeriodicProfile.linear(1.0)
    target = p.g(1234.5678)
    assert p.g_inverse(target) == pytest.approx(1234.5678, abs=1e-6)


# -- protection laws ---------------------------------------------------------------


def test_fraction_law():
    law = FractionLaw(0.5)
    assert law.predict(80.0) == 40.0
    with pytest.raises(ValueError):
        FractionLaw(1.0)
    with pytest.raises(ValueError):
        FractionLaw(0.0)


def test_difference_law():
    law = DifferenceLaw(10.0)
    assert law.predict(25.0) == 15.0
    assert law.predict(5.0) == 0.0
    with pytest.raises(ValueError):
        DifferenceLaw(0.0)


def test_elasticity_law():
    law = ElasticityLaw(0.5, 1.0)
    assert law.predict(math.e**2) == pytest.approx(math.e, rel=1e-12)
    with pytest.raises(ValueError):
        ElasticityLaw(1.0, 1.0)
    with pytest.raises(ValueError):
        ElasticityLaw(0.5, 0.0)


# -- equality -----------------------------------------------------------------------


def test_profile_equality_and_hash():
    a = PeriodicProfile.linear(LN2)
    b = PeriodicProfile.linear(LN2)
    c = PeriodicProfile.linear(1.0)
    assert a == b and hash(a) == hash(b)
    assert a != c
