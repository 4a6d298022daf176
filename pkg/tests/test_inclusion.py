import math

import numpy as np
import pytest

from ntkrkhs import (
    IndeterminateError,
    ParameterError,
    SeriesCoefficients,
    ZonalKernel,
    cauchy_coefficients,
    certify_kernels,
    domination_certificate,
    schoenberg_check,
    theorem1_report,
    verify_certificate,
)


def test_schoenberg_accepts_ntk(cfg):
    r = schoenberg_check(cauchy_coefficients(ZonalKernel.ntk(3, 1.0), cfg))
    assert r.passed
    assert r.sum_estimate == pytest.approx(8.0, abs=1e-3)


def test_schoenberg_rejects_shifted_identity():
    # u - 1/2 has a negative constant term
    r = schoenberg_check(SeriesCoefficients.from_values([-0.5, 1.0] + [0.0] * 200))
    assert not r.passed
    assert r.min_coefficient == -0.5


def test_schoenberg_rejects_non_summable():
    n = np.arange(1, 300, dtype=float)
    r = schoenberg_check(SeriesCoefficients.from_values(np.concatenate([[1.0], n ** -1.0 * np.log(n + 1) ** 3])))
    assert not r.passed


def test_synthetic_domination():
    b = SeriesCoefficients.from_values([1.0, 0.5, 0.25, 0.0])
    a = SeriesCoefficients.from_values([1.0, 1.0, 1.0, 1.0])
    cert = domination_certificate(b, a)
    assert cert.success
    assert cert.gamma_squared == pytest.approx(1.01)
    assert verify_certificate(cert, b, a)


def test_indeterminate_strict_raises_with_certificate():
    b = SeriesCoefficients.from_values([1.0, 1.0, 1.0])
    a = SeriesCoefficients.from_values([1.0, 0.0, 1.0])
    with pytest.raises(IndeterminateError) as info:
        domination_certificate(b, a)
    assert info.value.certificate.indeterminate_orders == (1,)
    lenient = domination_certificate(b, a, strict=False)
    assert lenient.indeterminate_orders == (1,)


def test_order_mismatch():
    with pytest.raises(ParameterError):
        domination_certificate(SeriesCoefficients.from_values([1.0]), SeriesCoefficients.from_values([1.0, 1.0]))


@pytest.mark.parametrize("k", [1, 3, 5])
@pytest.mark.parametrize("beta", [0.0, 1.0])
def test_laplace_ntk_both_directions(k, beta, cfg):
    pair = theorem1_report(k, beta, math.sqrt(2), cfg)
    assert pair.both_succeed
    assert pair.ntk_in_reference.asymptotic_ratio <= pair.ntk_in_reference.gamma_squared
    assert pair.reference_in_ntk.asymptotic_ratio <= pair.reference_in_ntk.gamma_squared
    s_ntk = cauchy_coefficients(ZonalKernel.ntk(k, beta), cfg)
    s_lap = cauchy_coefficients(ZonalKernel.laplace(c_tilde=math.sqrt(2)), cfg)
    assert verify_certificate(pair.ntk_in_reference, s_ntk, s_lap)
    assert verify_certificate(pair.reference_in_ntk, s_lap, s_ntk)


def test_two_layer_zero_bias_odd_orders_flagged(cfg):
    pair = theorem1_report(1, 0.0, math.sqrt(2), cfg)
    up = pair.reference_in_ntk
    assert up.indeterminate_orders
    assert all(n % 2 == 1 for n in up.indeterminate_orders)
    assert up.indeterminate_orders[0] == 3
    assert any("odd" in note for note in up.notes)
    assert any("vanishes on odd" in note for note in up.notes)
    assert not pair.ntk_in_reference.indeterminate_orders
    with pytest.raises(IndeterminateError):
        domination_certificate(
            cauchy_coefficients(ZonalKernel.laplace(c_tilde=math.sqrt(2)), cfg),
            cauchy_coefficients(ZonalKernel.ntk(1, 0.0), cfg),
        )


def test_gaussian_cannot_dominate(cfg):
    pair = theorem1_report(2, 1.0, config=cfg, reference=ZonalKernel.gaussian(1.0))
    assert not pair.ntk_in_reference.success
    assert pair.reference_in_ntk.success
    assert not certify_kernels(ZonalKernel.laplace(1.0), ZonalKernel.gaussian(0.5), cfg).success
    assert certify_kernels(ZonalKernel.gaussian(0.5), ZonalKernel.laplace(1.0), cfg).success


def test_exp_power_ordering(cfg):
    assert certify_kernels(ZonalKernel.exp_power(1.5), ZonalKernel.exp_power(0.5), cfg).success
    wrong = certify_kernels(ZonalKernel.exp_power(0.5), ZonalKernel.exp_power(1.5), cfg)
    assert not wrong.success
    assert math.isinf(wrong.asymptotic_ratio)


def test_reflexive(cfg):
    k = ZonalKernel.ntk(2, 1.0)
    cert = certify_kernels(k, k, cfg)
    assert cert.success and cert.gamma_squared == pytest.approx(1.01)


def test_certificate_serialises(cfg):
    d = theorem1_report(2, 0.0, config=cfg).reference_in_ntk.to_dict()
    assert d["success"] is True
    assert "not a proof" in " ".join(d["notes"])
    assert d["dominated"]["variant"] == "laplace"
