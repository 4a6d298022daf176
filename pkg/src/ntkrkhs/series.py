"""Maclaurin coefficients of zonal kernels.

Two independent routes are provided:

* :func:`cauchy_coefficients` samples the kernel on a circle of radius
  ``r < 1`` and applies the radix-2 FFT (trapezoidal rule for the Cauchy
  integral), giving ``[z^n] K`` with a per-order error bound.
* :class:`FormalSeries` with :func:`kappa0_series_oracle`,
  :func:`kappa1_series_oracle` and :func:`closed_form_series` builds the
  same coefficients from exact expansions by truncated power-series
  arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from . import kernels as kz
from .errors import ConfigError, DegenerateInputError, NumericalHealthError, UnsupportedKernelError
from .fft import fft, is_power_of_two
from .kernels import ZonalKernel, eval_zonal

ROUNDOFF_CONSTANT = 8.0
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ExtractionConfig:
    radius: float = 0.99
    sample_count: int = 2 ** 15
    max_order: int = 512

    def __post_init__(self):
        r, m, n = self.radius, self.sample_count, self.max_order
        if not 0.0 < r < 1.0:
            raise ConfigError(f"radius must lie in (0, 1), got {r!r}")
        if int(m) != m or not is_power_of_two(int(m)):
            raise ConfigError(f"sample_count must be a power of two, got {m!r}")
        if int(n) != n or n < 0 or n > m // 4:
            raise ConfigError(f"max_order must be an integer in [0, sample_count/4], got {n!r}")
        if r ** (-n) > 1e4:
            raise ConfigError(f"radius^-max_order = {r ** (-n):.3g} exceeds 1e4 (roundoff amplification)")
        if r ** m > 1e-40:
            raise ConfigError(f"radius^sample_count = {r ** m:.3g} exceeds 1e-40 (aliasing)")

    def to_dict(self):
        return {"radius": self.radius, "sample_count": self.sample_count, "max_order": self.max_order}


DEFAULT_CONFIG = ExtractionConfig()


@dataclass(frozen=True, eq=False)
class SeriesCoefficients:
    """Coefficients ``a_0..a_N`` with per-order absolute error bounds.

    ``kernel`` and ``config`` are ``None`` for hand-built coefficient lists
    (see :meth:`from_values`).
    """

    coeffs: np.ndarray
    error_bound: np.ndarray
    kernel: Optional[ZonalKernel] = None
    config: Optional[ExtractionConfig] = None

    @property
    def max_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def label(self) -> str:
        return self.kernel.label if self.kernel is not None else "custom"

    @classmethod
    def from_values(cls, coeffs: Sequence[float], error_bound=None) -> "SeriesCoefficients":
        c = np.asarray(coeffs, dtype=float)
        if error_bound is None:
            err = np.full_like(c, 4 * EPS * max(1.0, float(np.max(np.abs(c), initial=0.0))))
        else:
            err = np.broadcast_to(np.asarray(error_bound, dtype=float), c.shape).copy()
        return cls(c, err)

    def ratios(self) -> np.ndarray:
        """``a_n / n^(-3/2)`` for ``n = 1..N``."""
        n = np.arange(1, self.max_order + 1, dtype=float)
        return self.coeffs[1:] * n ** 1.5


def cauchy_coefficients(kernel: ZonalKernel, config: ExtractionConfig = DEFAULT_CONFIG) -> SeriesCoefficients:
    """Extract ``[z^n] K`` for ``n <= config.max_order`` by FFT on a circle.

    Raises :class:`NumericalHealthError` if the discarded imaginary parts are
    larger than the error bound.  Results are cached per (kernel, config).
    """
    if not isinstance(config, ExtractionConfig):
        raise ConfigError("config must be an ExtractionConfig")
    return _cauchy_cached(kernel, config)


@lru_cache(maxsize=128)
def _cauchy_cached(kernel: ZonalKernel, config: ExtractionConfig) -> SeriesCoefficients:
    r, m, nmax = config.radius, config.sample_count, config.max_order
    theta = 2.0 * np.pi * np.arange(m) / m
    samples = np.asarray(eval_zonal(kernel, r * np.exp(1j * theta)))
    kmax = float(np.max(np.abs(samples)))
    raw = fft(samples)[: nmax + 1] / m
    n = np.arange(nmax + 1)
    scale = r ** (-n.astype(float))
    c = raw * scale
    aliasing = kmax * r ** (m - n) / (1.0 - r ** m)
    roundoff = ROUNDOFF_CONSTANT * math.sqrt(m) * EPS * kmax * scale
    err = aliasing + roundoff
    bad = np.abs(c.imag) > err
    if np.any(bad):
        worst = int(np.argmax(np.abs(c.imag) - err))
        raise NumericalHealthError(
            f"{kernel.label}: imaginary part {c.imag[worst]:.3e} at n={worst} exceeds error bound {err[worst]:.3e}"
        )
    coeffs = c.real.copy()
    coeffs.setflags(write=False)
    err.setflags(write=False)
    return SeriesCoefficients(coeffs, err, kernel, config)


def tail_estimate(increments: np.ndarray, last_n: int, window: int = 50) -> Tuple[float, float]:
    """Fit ``d_n ~ C n^(-3/2)`` on the last ``window`` increments.

    Returns ``(C, T)`` with ``T = C * sum_{n > last_n} n^(-3/2)``.
    """
    d = np.asarray(increments, dtype=float)
    if len(d) < window:
        raise DegenerateInputError(f"need at least {window} increments, got {len(d)}")
    n = np.arange(last_n - window + 1, last_n + 1, dtype=float)
    c_fit = float(np.mean(d[-window:] * n ** 1.5))
    # Euler-Maclaurin: sum_{n>N} n^-3/2 ~ 2/sqrt(N) - 1/(2 N^1.5)
    tail_sum = 2.0 / math.sqrt(last_n) - 0.5 * last_n ** -1.5
    return c_fit, c_fit * tail_sum


def abel_sum(series: SeriesCoefficients, alternating: bool = False) -> Tuple[float, float]:
    """Partial sum of ``a_n`` (or ``(-1)^n a_n``) and its estimated tail."""
    c = np.asarray(series.coeffs, dtype=float)
    if alternating:
        c = c * (-1.0) ** np.arange(len(c))
    partial = math.fsum(c)
    _, tail = tail_estimate(c, len(c) - 1)
    return partial, tail


def remainder_bound(series: SeriesCoefficients) -> float:
    """``sum_{n > N} |a_n|`` from an ``n^(-3/2)`` fit to ``|a_n|``.

    Bounds the remainder of both the plain and the alternating sum; for
    alternating sums it is loose, since the signed tail nearly cancels.
    """
    c = np.abs(np.asarray(series.coeffs, dtype=float))
    return tail_estimate(c, len(c) - 1)[1]


# ---------------------------------------------------------------------------
# formal power series


class FormalSeries:
    """Truncated power series ``sum_{n <= order} c_n z^n`` with float coefficients.

    Binary operations truncate to the smaller order of the operands.
    """

    def __init__(self, coeffs, order: Optional[int] = None):
        c = np.asarray(coeffs, dtype=float).ravel()
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        out = np.zeros(order + 1)
        k = min(len(c), order + 1)
        out[:k] = c[:k]
        self.coeffs = out
        self.order = order

    def __repr__(self):
        return f"FormalSeries(order={self.order}, coeffs={self.coeffs[:6]}...)"

    def __len__(self):
        return self.order + 1

    def __getitem__(self, n):
        return self.coeffs[n]

    @classmethod
    def constant(cls, value: float, order: int) -> "FormalSeries":
        return cls([value], order)

    @classmethod
    def identity(cls, order: int) -> "FormalSeries":
        return cls([0.0, 1.0], order)

    def _coerce(self, other):
        if isinstance(other, FormalSeries):
            return other
        return FormalSeries.constant(float(other), self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        return FormalSeries(self.coeffs[: order + 1] + other.coeffs[: order + 1], order)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(-self.coeffs, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries(self.coeffs * float(other), self.order)
        order = min(self.order, other.order)
        prod = np.convolve(self.coeffs[: order + 1], other.coeffs[: order + 1])[: order + 1]
        return FormalSeries(prod, order)

    __rmul__ = __mul__

    def exp(self) -> "FormalSeries":
        """``exp`` of a series with zero constant term.

        Uses ``n e_n = sum_{j=1}^n j g_j e_{n-j}`` from ``E' = g' E``.
        """
        g = self.coeffs
        if g[0] != 0.0:
            raise ValueError("exp is only defined here for series with zero constant term")
        n_max = self.order
        e = np.zeros(n_max + 1)
        e[0] = 1.0
        jg = np.arange(n_max + 1) * g
        for n in range(1, n_max + 1):
            e[n] = np.dot(jg[1 : n + 1], e[n - 1 :: -1][:n]) / n
        return FormalSeries(e, n_max)

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """``self(inner(z))`` for ``inner`` with zero constant term (Horner)."""
        if inner.coeffs[0] != 0.0:
            raise ValueError("composition needs an inner series with zero constant term")
        order = min(self.order, inner.order)
        out = FormalSeries.constant(self.coeffs[order], order)
        for c in self.coeffs[order - 1 :: -1] if order > 0 else []:
            out = out * inner + c
        return out

    def evaluate(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def one_minus_z_power(alpha: float, order: int) -> FormalSeries:
    """Binomial expansion of ``(1 - z)^alpha``."""
    c = np.empty(order + 1)
    c[0] = 1.0
    for n in range(1, order + 1):
        c[n] = c[n - 1] * (n - 1 - alpha) / n
    return FormalSeries(c, order)


def kappa1_series_oracle(order: int) -> FormalSeries:
    """Maclaurin series of ``kappa1``.

    ``1/pi + z/2 + sum_{n>=1} (2n-3)!! / ((2n-1) n! 2^n pi) z^(2n)``,
    with ``(-1)!! = 1``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = np.zeros(order + 1)
    c[0] = 1.0 / math.pi
    if order >= 1:
        c[1] = 0.5
    t = 0.5  # (2n-3)!!/(n! 2^n) at n = 1
    n = 1
    while 2 * n <= order:
        c[2 * n] = t / ((2 * n - 1) * math.pi)
        t *= (2 * n - 1) / (2 * (n + 1))
        n += 1
    return FormalSeries(c, order)


def kappa0_series_oracle(order: int) -> FormalSeries:
    """Maclaurin series of ``kappa0 = 1/2 + arcsin(z)/pi``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = np.zeros(order + 1)
    c[0] = 0.5
    s = 1.0  # (2n)!/(4^n n!^2)
    n = 0
    while 2 * n + 1 <= order:
        c[2 * n + 1] = s / ((2 * n + 1) * math.pi)
        s *= (2 * n + 1) / (2 * n + 2)
        n += 1
    return FormalSeries(c, order)


def closed_form_series(kernel: ZonalKernel, order: int) -> FormalSeries:
    """Exact expansion for the kernels that have one.

    Supported: Laplace, Gaussian, exponential power, ``kappa0``, ``kappa1``
    (also as a one-fold iterate) and the NTK with ``k = 1``.
    """
    v = kernel.variant
    if v in (kz.LAPLACE, kz.EXP_POWER):
        if v == kz.LAPLACE:
            rate, half_power = kernel.c_tilde, 0.5
        else:
            rate, half_power = 2.0 ** (kernel.gamma / 2.0) / kernel.sigma, kernel.gamma / 2.0
        # exp(-rate (1-z)^p) = e^-rate * exp(-rate * ((1-z)^p - 1))
        s = one_minus_z_power(half_power, order) - 1.0
        return (s * (-rate)).exp() * math.exp(-rate)
    if v == kz.GAUSSIAN:
        two_c = 2.0 * kernel.c
        n = np.arange(order + 1)
        logs = n * math.log(two_c) - np.array([math.lgamma(k + 1) for k in n]) - two_c
        return FormalSeries(np.exp(logs), order)
    if v == kz.ARCCOS0:
        return kappa0_series_oracle(order)
    if v == kz.ARCCOS1 or (v == kz.KAPPA1_ITERATE and kernel.k == 1):
        return kappa1_series_oracle(order)
    if v == kz.NTK and kernel.k == 1:
        b2 = kernel.beta ** 2
        z = FormalSeries.identity(order)
        return kappa1_series_oracle(order) + (z + b2) * kappa0_series_oracle(order) + b2
    raise UnsupportedKernelError(
        f"no closed-form series for {kernel.label}; use two-radius FFT agreement instead"
    )
