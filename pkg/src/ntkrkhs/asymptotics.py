"""Limit constants of ``[z^n] K / n^(-3/2)`` and empirical ratio diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels as kz
from .errors import DegenerateInputError, ParameterError, UnsupportedKernelError
from .kernels import ZonalKernel, iterate_minus_one, kappa0_real
from .series import SeriesCoefficients
from .special import gamma_real

_SQRT2_PI32 = math.sqrt(2.0) * math.pi ** 1.5
_PREDICTABLE = (kz.LAPLACE, kz.NTK, kz.EXP_POWER)


@dataclass(frozen=True)
class AsymptoticPrediction:
    """``[z^n] K ~ (even_limit or odd_limit) * n^exponent`` by parity of ``n``."""

    even_limit: float
    odd_limit: float
    kernel: ZonalKernel
    exponent: float = -1.5

    def __post_init__(self):
        if self.kernel.variant not in _PREDICTABLE:
            raise UnsupportedKernelError(
                f"no polynomial-rate prediction for {self.kernel.label} (coefficients decay faster)"
            )

    def limit(self, n: int) -> float:
        return self.even_limit if n % 2 == 0 else self.odd_limit

    def to_dict(self):
        return {
            "kernel": self.kernel.to_dict(),
            "even_limit": self.even_limit,
            "odd_limit": self.odd_limit,
            "exponent": self.exponent,
        }


def minus_one_product(k: int) -> float:
    """``prod_{j=1}^{k-1} kappa0(a_j)`` with ``a_j = kappa1^(j)(-1)``; 1 when empty."""
    prod = 1.0
    for j in range(1, k):
        prod *= kappa0_real(iterate_minus_one(j))
    return prod


def predicted_ratio(kernel: ZonalKernel) -> AsymptoticPrediction:
    """Parity-aware limits of ``[z^n] K / n^(-3/2)`` for Laplace and NTK kernels."""
    if kernel.variant == kz.LAPLACE:
        lim = kernel.c_tilde / (2.0 * math.sqrt(math.pi))
        return AsymptoticPrediction(lim, lim, kernel)
    if kernel.variant == kz.NTK:
        k, b2 = kernel.k, kernel.beta ** 2
        # +1 singularity contributes the common part, -1 the (-1)^n part
        common = (b2 + 1.0) * k * (k + 1) / (2.0 * _SQRT2_PI32)
        alternating = (1.0 - b2) / _SQRT2_PI32 * minus_one_product(k)
        return AsymptoticPrediction(common + alternating, common - alternating, kernel)
    raise UnsupportedKernelError(f"predicted_ratio covers Laplace and NTK kernels, not {kernel.label}")


def predicted_exp_ratio(gamma: float, sigma: float) -> Tuple[float, float]:
    """``(exponent, constant)`` with ``[z^n] K_exp ~ constant * n^exponent``."""
    if not 0.0 < gamma < 2.0:
        raise ParameterError(f"gamma must lie in (0, 2), got {gamma!r}")
    if not sigma > 0.0:
        raise ParameterError(f"sigma must be positive, got {sigma!r}")
    rate = 2.0 ** (gamma / 2.0) / sigma
    return -gamma / 2.0 - 1.0, rate / (-gamma_real(-gamma / 2.0))


def asymptotic_form(kernel: ZonalKernel) -> Optional[AsymptoticPrediction]:
    """Prediction for any kernel with polynomial coefficient decay, else ``None``."""
    if kernel.variant in (kz.LAPLACE, kz.NTK):
        return predicted_ratio(kernel)
    if kernel.variant == kz.EXP_POWER:
        exponent, const = predicted_exp_ratio(kernel.gamma, kernel.sigma)
        return AsymptoticPrediction(const, const, kernel, exponent)
    return None


@dataclass(frozen=True, eq=False)
class RatioDiagnostics:
    ratios: np.ndarray  # shape (N, 2): columns n, a_n * n^(3/2)
    even_tail_mean: float
    odd_tail_mean: float
    exponent_estimate: float

    def ratio_at(self, n: int) -> float:
        return float(self.ratios[n - 1, 1])


def ratio_diagnostics(series: SeriesCoefficients, min_points: int = 8) -> RatioDiagnostics:
    """Ratios ``a_n / n^(-3/2)``, parity-split tail means and a log-log slope.

    The slope is a least-squares fit over even ``n`` in the upper half of the
    range, using only coefficients above ten times their error bound.
    """
    nmax = series.max_order
    if nmax < 64:
        raise DegenerateInputError(f"ratio diagnostics need max_order >= 64, got {nmax}")
    n = np.arange(1, nmax + 1)
    ratios = np.column_stack([n.astype(float), series.ratios()])

    tail = n[n > nmax - nmax // 4]
    even_tail = ratios[tail[tail % 2 == 0] - 1, 1]
    odd_tail = ratios[tail[tail % 2 == 1] - 1, 1]

    c = np.asarray(series.coeffs)
    err = np.asarray(series.error_bound)
    fit_n = np.arange(nmax // 2 + (nmax // 2) % 2, nmax + 1, 2)
    fit_n = fit_n[np.abs(c[fit_n]) > 10.0 * err[fit_n]]
    if len(fit_n) < min_points:
        raise DegenerateInputError(f"only {len(fit_n)} usable points for the exponent fit")
    slope = np.polyfit(np.log(fit_n), np.log(np.abs(c[fit_n])), 1)[0]
    return RatioDiagnostics(ratios, float(np.mean(even_tail)), float(np.mean(odd_tail)), float(slope))
