import math

import numpy as np
import pytest

from xychain.signedlog import LOG_ZERO, SignedLogValue


def test_from_float_and_back():
    for value in (3.5, -0.25, 1e-300):
        assert float(SignedLogValue.from_float(value)) == pytest.approx(value, rel=1e-15)
    zero = SignedLogValue.from_float(0.0)
    assert zero.is_zero
    assert zero.abs_log == LOG_ZERO


def test_sign_validation():
    with pytest.raises(ValueError):
        SignedLogValue(2, 0.0)
    assert SignedLogValue(0, 5.0).log_magnitude == LOG_ZERO


def test_product_of_many_small_factors():
    factors = np.full(100_000, 0.5)
    value = SignedLogValue.from_factors(factors)
    assert value.sign == 1
    assert value.abs_log == pytest.approx(-100_000 * math.log(2), rel=1e-12)
    assert float(value) == 0.0


def test_factor_signs_and_zeros():
    assert SignedLogValue.from_factors([-2.0, 3.0, -0.5]).sign == 1
    assert SignedLogValue.from_factors([-2.0, 3.0]).sign == -1
    assert SignedLogValue.from_factors([1.0, 0.0, 5.0]).is_zero
    assert float(SignedLogValue.from_factors([])) == 1.0


def test_multiplication():
    a = SignedLogValue.from_float(-3.0)
    b = SignedLogValue.from_float(0.5)
    assert float(a * b) == pytest.approx(-1.5)
    assert (a * SignedLogValue.zero()).is_zero
    assert float(-a) == pytest.approx(3.0)
    assert float(a.scale(-2.0)) == pytest.approx(6.0)


def test_addition_with_mixed_signs():
    a = SignedLogValue.from_float(2.0)
    b = SignedLogValue.from_float(-0.5)
    assert float(a + b) == pytest.approx(1.5)
    assert float(b + b) == pytest.approx(-1.0)
    assert float(a + SignedLogValue.zero()) == pytest.approx(2.0)
    assert (a + (-a)).is_zero


def test_addition_far_below_float_range():
    tiny = SignedLogValue(1, -5000.0)
    total = tiny + tiny.scale(3.0)
    assert total.sign == 1
    assert total.abs_log == pytest.approx(-5000.0 + math.log(4.0), abs=1e-12)
