import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ntkrkhs import DomainError, ParameterError, ZonalKernel, eval_kappa0, eval_kappa1, eval_kappa1_iterate, eval_ntk, eval_zonal
from ntkrkhs.kernels import iterate_minus_one, kappa0_real, kappa1_real, ntk_at_minus_one

interior = st.floats(min_value=-0.999, max_value=0.999)


def ntk_real(k, beta, u):
    # straight transcription of the layer recursion on [-1, 1]
    sig, total = u, u + beta ** 2
    for _ in range(k):
        nxt = kappa1_real(sig)
        total = nxt + total * kappa0_real(sig) + beta ** 2
        sig = nxt
    return total


@given(interior)
def test_arccos_kernels_match_real_formulas(u):
    assert eval_kappa0(u) == pytest.approx((math.pi - math.acos(u)) / math.pi, abs=1e-14)
    want = (u * (math.pi - math.acos(u)) + math.sqrt(1 - u * u)) / math.pi
    assert eval_kappa1(u) == pytest.approx(want, abs=1e-14)
    assert abs(eval_kappa1(u).imag) < 1e-15


@given(interior, st.integers(1, 6), st.sampled_from([0.0, 0.5, 1.0]))
def test_ntk_matches_real_recursion(u, k, beta):
    assert eval_ntk(k, beta, u).real == pytest.approx(ntk_real(k, beta, u), rel=1e-12, abs=1e-13)


@settings(max_examples=50)
@given(st.floats(0.0, 0.98), st.floats(-math.pi, math.pi))
def test_conjugate_symmetry(rho, phi):
    z = rho * cmath.exp(1j * phi)
    for kern in (ZonalKernel.ntk(3, 1.0), ZonalKernel.laplace(c_tilde=1.0), ZonalKernel.exp_power(0.7)):
        assert eval_zonal(kern, z.conjugate()) == pytest.approx(eval_zonal(kern, z).conjugate(), abs=1e-12)


def test_kappa1_derivative_is_kappa0():
    h = 1e-6
    for z in (0.3, -0.5 + 0.2j, 0.1j):
        d = (eval_kappa1(z + h) - eval_kappa1(z - h)) / (2 * h)
        assert d == pytest.approx(eval_kappa0(z), abs=1e-8)


def test_kernel_values_near_one():
    z = 1 - 1e-12
    for k in range(1, 5):
        for beta in (0.0, 1.0):
            assert eval_ntk(k, beta, z).real == pytest.approx(ZonalKernel.ntk(k, beta).value_at_one(), rel=1e-5)
    assert ZonalKernel.ntk(3, 1.0).value_at_one() == 8.0


def test_endpoint_minus_one():
    assert iterate_minus_one(1) == 0.0
    assert iterate_minus_one(2) == pytest.approx(1 / math.pi)
    z = -1 + 1e-13
    for k in range(1, 6):
        for beta in (0.0, 1.0):
            assert ntk_at_minus_one(k, beta) == pytest.approx(eval_ntk(k, beta, z).real, abs=1e-5)
    assert ZonalKernel.laplace(c_tilde=1.0).value_at_minus_one() == pytest.approx(math.exp(-math.sqrt(2)))


def test_exp_power_reduces_to_laplace_and_gaussian():
    z = np.array([0.2, -0.7 + 0.1j, 0.5j])
    lap = eval_zonal(ZonalKernel.laplace(1.0), z)  # exp(-|x-y|) with |x-y| = sqrt(2(1-u))
    assert np.allclose(eval_zonal(ZonalKernel.exp_power(1.0), z), lap, atol=1e-15)
    assert np.allclose(eval_zonal(ZonalKernel.exp_power(2.0 - 1e-12), z), eval_zonal(ZonalKernel.gaussian(1.0), z), atol=1e-10)


def test_iterate_composes():
    z = 0.3 + 0.2j
    assert eval_kappa1_iterate(3, z) == pytest.approx(eval_kappa1(eval_kappa1(eval_kappa1(z))), abs=1e-15)


@pytest.mark.parametrize("z", [1.0, -1.0, 1j, 2.0, complex("nan")])
def test_domain_error_outside_open_disk(z):
    with pytest.raises(DomainError):
        eval_kappa0(z)


def test_vector_input_keeps_shape():
    out = eval_ntk(2, 1.0, np.linspace(-0.5, 0.5, 7))
    assert out.shape == (7,)


@pytest.mark.parametrize(
    "make",
    [
        lambda: ZonalKernel.ntk(0),
        lambda: ZonalKernel.ntk(2, -1.0),
        lambda: ZonalKernel.ntk(1.5),
        lambda: ZonalKernel.laplace(),
        lambda: ZonalKernel.laplace(1.0, c_tilde=1.0),
        lambda: ZonalKernel.laplace(-1.0),
        lambda: ZonalKernel.gaussian(0.0),
        lambda: ZonalKernel.exp_power(2.5),
        lambda: ZonalKernel.exp_power(1.0, 0.0),
        lambda: ZonalKernel("matern"),
    ],
)
def test_bad_parameters(make):
    with pytest.raises(ParameterError):
        make()


def test_kernels_are_hashable_and_labelled():
    assert hash(ZonalKernel.ntk(2, 1.0)) == hash(ZonalKernel.ntk(2, 1.0))
    assert ZonalKernel.ntk(2, 1.0).label == "ntk(k=2,beta=1)"
    assert ZonalKernel.laplace(c_tilde=1.0).to_dict()["c_tilde"] == pytest.approx(1.0)
