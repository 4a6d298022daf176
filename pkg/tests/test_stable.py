import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ntkrkhs import (
    DegenerateInputError,
    ParameterError,
    PrecisionLossError,
    cm_certificate,
    density_closed_form_half,
    density_scaled,
    density_series,
    gamma_real,
    resolvable_t_min,
    tail_constant,
    verify_cm_certificate,
)


def branch_cut_density(a, t):
    # f(t) = (1/pi) int_0^inf exp(-t x - x^a cos(pi a)) sin(x^a sin(pi a)) dx
    mpmath.mp.dps = 30
    ca, sa = mpmath.cos(mpmath.pi * a), mpmath.sin(mpmath.pi * a)
    f = lambda x: mpmath.exp(-t * x - x ** a * ca) * mpmath.sin(x ** a * sa)
    return float(mpmath.quad(f, [0, 1, 10, mpmath.inf]) / mpmath.pi)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 50))
def test_half_matches_closed_form(t):
    assert density_series(0.5, t).value == pytest.approx(density_closed_form_half(t).value, rel=1e-8)


@pytest.mark.parametrize("a", [1 / 3, 2 / 3, 3 / 4])
@pytest.mark.parametrize("t", [0.5, 2.0, 30.0])
def test_series_against_branch_cut_integral(a, t):
    assert density_series(a, t).value == pytest.approx(branch_cut_density(a, t), rel=1e-8)


def test_zero_is_exact():
    assert density_series(0.5, 0.0).value == 0.0
    assert density_closed_form_half(0.0).value == 0.0


@pytest.mark.parametrize("a", [0.5, 2 / 3, 3 / 4])
def test_tail_product_at_ten_thousand(a):
    t = 1e4
    prod = density_series(a, t).value * t ** (a + 1) * (-gamma_real(-a))
    assert 0.99 <= prod <= 1.01


def test_one_third_tail_two_terms():
    # the relative t^(-a) correction is still 2% at 1e4 for a = 1/3
    a, t = 1 / 3, 1e4
    f = density_series(a, t).value
    lead = t ** (-a - 1) / (-gamma_real(-a))
    second = t ** (-2 * a - 1) / (2 * gamma_real(-2 * a))
    assert f == pytest.approx(lead + second, rel=2e-3)
    t = 1e6
    assert 0.99 <= density_series(a, t).value * t ** (a + 1) * (-gamma_real(-a)) <= 1.01


def test_scaled_density_matches_transform():
    # sigma^(1/a) f(t sigma^(1/a)) is the transform of exp(-s^a / sigma)
    a, sigma = 0.5, 2.0
    for s in (0.5, 1.0):
        val, _ = integrate.quad(lambda t: math.exp(-s * t) * density_scaled(a, sigma, t).value, 0.01, 2e3, limit=400)
        assert val == pytest.approx(math.exp(-(s ** a) / sigma), rel=2e-3)
    assert tail_constant(0.5, 2.0) == pytest.approx(tail_constant(0.5) / 2.0)


@pytest.mark.parametrize("a", [1 / 3, 1 / 2, 2 / 3])
def test_normalisation(a):
    lo, hi = resolvable_t_min(a), 1e4
    body, _ = integrate.quad(lambda u: density_series(a, math.exp(u)).value * math.exp(u), math.log(lo), math.log(hi), limit=400)
    total = body + tail_constant(a) * hi ** (-a) / a
    assert total == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_laplace_round_trip(s):
    val, _ = integrate.quad(lambda t: math.exp(-s * t) * density_series(0.5, t).value, resolvable_t_min(0.5), 1e3, limit=400)
    assert val == pytest.approx(math.exp(-math.sqrt(s)), rel=0.01)


def test_guard_rejects_small_t():
    with pytest.raises(PrecisionLossError):
        density_series(0.5, 4e-4)
    with pytest.raises(PrecisionLossError):
        density_series(0.75, 0.05)


def test_accepted_values_near_guard_are_accurate():
    t = resolvable_t_min(0.5)
    ev = density_series(0.5, t)
    assert ev.value == pytest.approx(density_closed_form_half(t).value, rel=1e-3)
    assert ev.cancellation_ratio <= 1e12


@settings(max_examples=25, deadline=None)
@given(st.floats(0.15, 0.85), st.floats(0.0, 3.0))
def test_density_positive_where_resolved(a, log_t):
    try:
        ev = density_series(a, 10 ** log_t)
    except PrecisionLossError:
        return
    assert ev.value > 0.0


@pytest.mark.parametrize("bad", [dict(a=0.0, t=1.0), dict(a=1.0, t=1.0), dict(a=0.5, t=-1.0), dict(a=0.5, t=math.inf)])
def test_bad_arguments(bad):
    with pytest.raises(ParameterError):
        density_series(**bad)


@pytest.mark.parametrize("g1,g2", [(1.0, 1.5), (0.5, 1.0)])
def test_cm_certificates(g1, g2):
    cert = cm_certificate(g1, 1.0, g2, 1.0)
    assert cert.success and cert.tail_ok and cert.min_difference >= 0
    assert verify_cm_certificate(cert, refine=2)
    assert "not a proof" in cert.notes[-1]


def test_cm_reflexive_and_order():
    cert = cm_certificate(1.0, 1.0, 1.0, 1.0, strict_order=False)
    assert cert.c_squared == pytest.approx(1.05)
    with pytest.raises(ParameterError):
        cm_certificate(1.5, 1.0, 1.0, 1.0)
    with pytest.raises(ParameterError):
        cm_certificate(1.0, 1.0, 1.0, 1.0)


def test_cm_nearly_equal_exponents_and_far_window():
    assert cm_certificate(1.0, 1.0, 1.0 + 1e-9, 1.0).success
    # the ratio peaks at the left edge of a far window, so no constant is claimed
    far = cm_certificate(1.0, 1.0, 1.5, 1.0, t_min=1e3, t_max=1e6)
    assert far.tail_ok and not far.success
    assert "toward t_min" in far.notes[0]


def test_cm_degenerate_grid():
    with pytest.raises(DegenerateInputError):
        cm_certificate(1.0, 1.0, 1.5, 1.0, t_min=1e-4, t_max=1e-2, points=64)
