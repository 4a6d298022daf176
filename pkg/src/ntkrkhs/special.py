"""Real gamma function via the Lanczos approximation (g = 7, 9 terms)."""

from __future__ import annotations

import math

from .errors import PoleError

_G = 7.0
_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def sinpi(x: float) -> float:
    """``sin(pi x)`` with the argument reduced exactly first."""
    n = round(x)
    r = x - n  # exact for floats
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def _lanczos_sum(x: float) -> float:
    # x is the shifted argument (Gamma(x + 1) form)
    acc = _COEFFS[0]
    for i, c in enumerate(_COEFFS[1:], start=1):
        acc += c / (x + i)
    return acc


def _check_pole(x: float) -> None:
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x!r}")


def gamma_real(x: float) -> float:
    """Gamma function for real ``x`` not a nonpositive integer.

    Negative arguments go through the reflection formula
    ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.
    """
    x = float(x)
    _check_pole(x)
    if x < 0.5:
        return math.pi / (sinpi(x) * gamma_real(1.0 - x))
    xm = x - 1.0
    t = xm + _G + 0.5
    # split the power to delay overflow for large x
    half = t ** ((xm + 0.5) / 2.0)
    return math.sqrt(2.0 * math.pi) * half * math.exp(-t) * half * _lanczos_sum(xm)


def log_abs_gamma(x: float) -> float:
    """``log |Gamma(x)|``, usable far beyond the overflow point of :func:`gamma_real`."""
    x = float(x)
    _check_pole(x)
    if x < 0.5:
        return math.log(math.pi / abs(sinpi(x))) - log_abs_gamma(1.0 - x)
    xm = x - 1.0
    t = xm + _G + 0.5
    return _HALF_LOG_2PI + (xm + 0.5) * math.log(t) - t + math.log(_lanczos_sum(xm))
