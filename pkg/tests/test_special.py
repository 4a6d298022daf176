import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ntkrkhs import PoleError, gamma_real, log_abs_gamma
from ntkrkhs.special import sinpi

non_integer = st.floats(-30, 30).filter(lambda x: abs(x - round(x)) > 1e-6)


@given(non_integer)
def test_gamma_against_mpmath(x):
    assert gamma_real(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


@given(st.floats(0.01, 1e4))
def test_log_gamma_against_lgamma(x):
    assert log_abs_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-13)


@given(non_integer)
def test_log_abs_gamma_negative(x):
    assert log_abs_gamma(x) == pytest.approx(float(mpmath.log(abs(mpmath.gamma(x)))), abs=1e-12)


def test_known_values():
    assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_real(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-15)
    assert gamma_real(5) == pytest.approx(24, rel=1e-15)
    assert gamma_real(-1.5) == pytest.approx(4 * math.sqrt(math.pi) / 3, rel=1e-14)


@pytest.mark.parametrize("x", [0, -1, -7, -30.0])
def test_poles(x):
    with pytest.raises(PoleError):
        gamma_real(x)
    with pytest.raises(PoleError):
        log_abs_gamma(x)


def test_sinpi_exact_zeros():
    assert sinpi(3.0) == 0.0
    assert sinpi(-12.0) == 0.0
    assert sinpi(0.5) == 1.0
    assert sinpi(1e6 + 0.5) == 1.0
