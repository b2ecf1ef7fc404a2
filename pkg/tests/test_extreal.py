"""Extended-real arithmetic contract."""

import math

import pytest

from protincome import NEG_INF, POS_INF, ExtendedRealError, WelfareValue


def test_finite_arithmetic_is_plain_float():
    a = WelfareValue(-0.01)
    assert (a + WelfareValue(-0.005)).value == -0.015
    assert (a * 2.0).value == -0.02
    assert (a - WelfareValue(0.01)).value == -0.02


def test_neg_inf_absorbs_finite_addition():
    assert (NEG_INF + WelfareValue(5.0)).is_neg_inf
    assert (WelfareValue(5.0) + NEG_INF).is_neg_inf
    assert (POS_INF + WelfareValue(-1e300)).is_pos_inf


def test_mixed_infinities_raise():
    with pytest.raises(ExtendedRealError):
        POS_INF + NEG_INF
    with pytest.raises(ExtendedRealError):
        NEG_INF - NEG_INF


def test_scalar_multiplication_signs():
    assert (NEG_INF * 3.0).is_neg_inf
    assert (NEG_INF * -1.0).is_pos_inf
    assert (POS_INF * 0.5).is_pos_inf
    with pytest.raises(ExtendedRealError):
        NEG_INF * 0.0


def test_nan_is_rejected_at_the_door():
    with pytest.raises(ExtendedRealError):
        WelfareValue(math.nan)


def test_total_order():
    assert NEG_INF < WelfareValue(-1e308) < WelfareValue(0.0) < POS_INF
    assert WelfareValue(1.0) <= WelfareValue(1.0)
    assert not (POS_INF < POS_INF)


def test_predicates():
    assert NEG_INF.is_neg_inf and not NEG_INF.is_finite
    assert POS_INF.is_pos_inf and not POS_INF.is_finite
    assert WelfareValue(0.0).is_finite
