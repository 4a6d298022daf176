"""Inverse Laplace transform of ``exp(-s^a)`` for ``0 < a < 1``.

``f(t) = (1/pi) sum_k (-1)^(k+1) Gamma(ak+1) sin(pi a k) / (k! t^(ak+1))``
converges for every ``t > 0`` but cancels badly as ``t -> 0+``; every
evaluation reports the ratio of its largest term to the result and refuses
results past :data:`MAX_CANCELLATION`, or whose estimated rounding error
exceeds :data:`ROUNDING_FRACTION` of the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import DegenerateInputError, NonConvergenceError, ParameterError, PrecisionLossError
from .special import gamma_real, log_abs_gamma, sinpi

MAX_CANCELLATION = 1e12
MAX_TERMS = 10 ** 6
STOP_RELATIVE = 1e-17
ROUNDING_FRACTION = 1e-2
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class DensityEvaluation:
    t: float
    value: float
    method: str  # "series" or "closed_form_half"
    cancellation_ratio: float

    def to_dict(self):
        return {"t": self.t, "value": self.value, "method": self.method,
                "cancellation_ratio": self.cancellation_ratio}


def _check_a(a: float) -> None:
    if not 0.0 < a < 1.0:
        raise ParameterError(f"a must lie in (0, 1), got {a!r}")


def density_series(a: float, t: float) -> DensityEvaluation:
    """``f(t)`` from the alternating series; ``f(0) = 0`` exactly."""
    _check_a(a)
    if not t >= 0.0 or not math.isfinite(t):
        raise ParameterError(f"t must be a finite nonnegative number, got {t!r}")
    if t == 0.0:
        return DensityEvaluation(0.0, 0.0, "series", 0.0)

    log_t = math.log(t)
    terms: List[float] = []
    rounding = 0.0
    biggest = 0.0
    prev_env = -math.inf
    decreasing = False
    partial = 0.0
    for k in range(1, MAX_TERMS + 1):
        ak = a * k
        # envelope ignores the sine so exact zeros of sin(pi a k) cannot stop the loop
        lg_num, lg_den, lg_pow = log_abs_gamma(ak + 1.0), log_abs_gamma(k + 1.0), (ak + 1.0) * log_t
        log_env = lg_num - lg_den - lg_pow
        env = math.exp(log_env) / math.pi if log_env < 709.0 else math.inf
        if env == math.inf:
            raise PrecisionLossError(f"series terms overflow at t={t!r}, a={a!r}")
        s = sinpi(ak)
        term = env * s if k % 2 else -env * s
        terms.append(term)
        # exp() turns the absolute error of log_env into a relative error of the term
        rounding += env * 4.0 * EPS * (abs(lg_num) + abs(lg_den) + abs(lg_pow) + 1.0 + k)
        biggest = max(biggest, abs(term))
        partial += term
        if log_env < prev_env:
            decreasing = True
        prev_env = log_env
        if decreasing and env < STOP_RELATIVE * abs(partial):
            break
    else:
        raise NonConvergenceError(f"no convergence after {MAX_TERMS} terms at t={t!r}, a={a!r}")

    value = math.fsum(terms)
    if not rounding < ROUNDING_FRACTION * abs(value):
        raise PrecisionLossError(
            f"rounding error estimate {rounding:.3g} swamps the result {value:.3g} at t={t!r}, a={a!r}"
        )
    ratio = biggest / abs(value)
    if ratio > MAX_CANCELLATION:
        raise PrecisionLossError(
            f"cancellation ratio {ratio:.3g} exceeds {MAX_CANCELLATION:.0e} at t={t!r}, a={a!r}"
        )
    return DensityEvaluation(float(t), value, "series", ratio)


def density_closed_form_half(t: float) -> DensityEvaluation:
    """Closed form for ``a = 1/2``: ``t^(-3/2) exp(-1/(4t)) / (2 sqrt(pi))``."""
    if not t >= 0.0:
        raise ParameterError(f"t must be nonnegative, got {t!r}")
    if t == 0.0:
        return DensityEvaluation(0.0, 0.0, "closed_form_half", 0.0)
    value = t ** -1.5 * math.exp(-0.25 / t) / (2.0 * math.sqrt(math.pi))
    return DensityEvaluation(float(t), value, "closed_form_half", 1.0)


def density_scaled(a: float, sigma: float, t: float) -> DensityEvaluation:
    """Inverse Laplace transform of ``exp(-s^a / sigma)``: ``sigma^(1/a) f(t sigma^(1/a))``."""
    _check_a(a)
    if not sigma > 0.0:
        raise ParameterError(f"sigma must be positive, got {sigma!r}")
    scale = sigma ** (1.0 / a)
    inner = density_series(a, t * scale)
    return DensityEvaluation(float(t), scale * inner.value, inner.method, inner.cancellation_ratio)


def tail_constant(a: float, sigma: float = 1.0) -> float:
    """``C`` in ``density_scaled(a, sigma, t) ~ C t^(-a-1)`` as ``t -> inf``."""
    _check_a(a)
    if not sigma > 0.0:
        raise ParameterError(f"sigma must be positive, got {sigma!r}")
    return 1.0 / (sigma * -gamma_real(-a))


# ---------------------------------------------------------------------------
# complete-monotonicity certificate


@dataclass(frozen=True, eq=False)
class CMCertificate:
    """Finite-grid witness that ``c^2 g1 - g2 >= 0`` on ``[t_min, t_max]``.

    ``g_i`` is the inverse Laplace transform of ``exp(-s^(gamma_i/2) / sigma_i)``.
    Beyond ``t_max`` positivity rests on the heavier ``t^(-a1-1)`` tail of
    ``g1`` (``tail_ok``); below ``t_min`` the series cannot be resolved.
    """

    c_squared: float
    grid: np.ndarray
    min_difference: float
    t_min: float
    t_max: float
    tail_ok: bool
    success: bool
    gamma1: float
    sigma1: float
    gamma2: float
    sigma2: float
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "gamma1": self.gamma1, "sigma1": self.sigma1,
            "gamma2": self.gamma2, "sigma2": self.sigma2,
            "c_squared": self.c_squared,
            "min_difference": self.min_difference,
            "t_min": self.t_min, "t_max": self.t_max,
            "grid_points": int(len(self.grid)),
            "tail_ok": self.tail_ok,
            "success": self.success,
            "notes": list(self.notes),
        }


def _guarded_values(a: float, sigma: float, grid: np.ndarray) -> np.ndarray:
    out = np.full(len(grid), np.nan)
    for i, t in enumerate(grid):
        try:
            out[i] = density_scaled(a, sigma, float(t)).value
        except PrecisionLossError:
            pass
    return out


def cm_certificate(
    gamma1: float,
    sigma1: float,
    gamma2: float,
    sigma2: float,
    t_min: float = 0.1,
    t_max: float = 1e4,
    points: int = 256,
    safety: float = 1.05,
    strict_order: bool = True,
) -> CMCertificate:
    """Certify ``c^2 L^-1{exp(-s^(g1/2)/s1)} - L^-1{exp(-s^(g2/2)/s2)} >= 0`` on a log grid.

    Grid points where either density trips the cancellation guard are
    dropped.  ``strict_order=False`` permits ``gamma1 == gamma2`` for
    reflexive sanity checks.
    """
    if not (0.0 < gamma1 < 2.0 and 0.0 < gamma2 < 2.0):
        raise ParameterError("gammas must lie in (0, 2)")
    if strict_order and not gamma1 < gamma2:
        raise ParameterError(f"need gamma1 < gamma2, got {gamma1!r} and {gamma2!r}")
    if not gamma1 <= gamma2:
        raise ParameterError(f"need gamma1 <= gamma2, got {gamma1!r} and {gamma2!r}")
    if not (sigma1 > 0.0 and sigma2 > 0.0):
        raise ParameterError("sigmas must be positive")
    if not 0.0 < t_min < t_max:
        raise ParameterError("need 0 < t_min < t_max")

    a1, a2 = gamma1 / 2.0, gamma2 / 2.0
    full = np.geomspace(t_min, t_max, points)
    g1 = _guarded_values(a1, sigma1, full)
    g2 = _guarded_values(a2, sigma2, full)
    ok = np.isfinite(g1) & np.isfinite(g2) & (g1 > 0.0)
    if ok.sum() < 32:
        raise DegenerateInputError(
            f"cancellation guard leaves {int(ok.sum())} grid points in [{t_min}, {t_max}]; need 32"
        )
    grid, g1, g2 = full[ok], g1[ok], g2[ok]
    notes: List[str] = []
    if ok.sum() < points:
        notes.append(f"{points - int(ok.sum())} grid points dropped by the cancellation guard")

    ratio = g2 / g1
    c_sq = safety * float(np.max(ratio))
    diff = c_sq * g1 - g2
    min_diff = float(np.min(diff))

    # no finite constant on the resolvable range if the ratio keeps rising toward t_min
    head = ratio[:8]
    blows_up_at_min = int(np.argmax(ratio)) == 0 and bool(np.all(np.diff(head) < 0.0))
    if blows_up_at_min:
        notes.append("ratio g2/g1 increases monotonically toward t_min; no finite c on the resolvable range")

    last_decade = grid >= grid[-1] / 10.0
    tail_ratio = ratio[last_decade]
    tail_ok = bool(
        a1 <= a2
        and np.all(np.diff(tail_ratio) <= 0.0)
        and tail_ratio[-1] <= c_sq
    )
    notes.append(
        "finite-grid numerical certificate on the resolvable range plus tail-rate comparison; not a proof"
    )
    success = bool(min_diff >= 0.0 and tail_ok and not blows_up_at_min)
    return CMCertificate(
        c_squared=c_sq,
        grid=grid,
        min_difference=min_diff,
        t_min=float(grid[0]),
        t_max=float(grid[-1]),
        tail_ok=tail_ok,
        success=success,
        gamma1=gamma1, sigma1=sigma1, gamma2=gamma2, sigma2=sigma2,
        notes=notes,
    )


def verify_cm_certificate(cert: CMCertificate, refine: int = 4) -> bool:
    """Re-check ``c^2 g1 - g2 >= 0`` on a ``refine``-times finer grid."""
    grid = np.geomspace(cert.t_min, cert.t_max, refine * len(cert.grid))
    g1 = _guarded_values(cert.gamma1 / 2.0, cert.sigma1, grid)
    g2 = _guarded_values(cert.gamma2 / 2.0, cert.sigma2, grid)
    ok = np.isfinite(g1) & np.isfinite(g2)
    return bool(np.all(cert.c_squared * g1[ok] - g2[ok] >= 0.0))


def resolvable_t_min(a: float, sigma: float = 1.0, lo: float = 1e-6, hi: float = 10.0, points: int = 241) -> float:
    """Smallest point of a log grid on ``[lo, hi]`` where the guarded series is accepted."""
    for t in np.geomspace(lo, hi, points):
        try:
            density_scaled(a, sigma, float(t))
        except PrecisionLossError:
            continue
        return float(t)
    raise DegenerateInputError(f"no resolvable point in [{lo}, {hi}] for a={a!r}")
