"""Zonal kernels on the sphere as analytic functions on the open unit disk.

Every kernel here is a function of the inner product ``u = x.y`` and is
continued to complex ``z`` with ``|z| < 1`` using principal branches of
``log`` and ``sqrt``.  The evaluators accept scalars or numpy arrays and are
vectorised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from .errors import DomainError, ParameterError

LAPLACE = "laplace"
GAUSSIAN = "gaussian"
EXP_POWER = "exp_power"
ARCCOS0 = "arccos0"
ARCCOS1 = "arccos1"
KAPPA1_ITERATE = "kappa1_iterate"
NTK = "ntk"

VARIANTS = (LAPLACE, GAUSSIAN, EXP_POWER, ARCCOS0, ARCCOS1, KAPPA1_ITERATE, NTK)


@dataclass(frozen=True)
class ZonalKernel:
    """Description of a zonal kernel ``K(u)`` on ``[-1, 1]``.

    Use the classmethod constructors rather than filling fields by hand.
    ``c`` is the Euclidean-distance rate of the Laplace kernel
    ``exp(-c |x - y|)``; on the sphere this is ``exp(-c_tilde sqrt(1 - u))``
    with ``c_tilde = sqrt(2) c``.  For the Gaussian variant ``c`` enters as
    ``exp(-2 c (1 - u))``.
    """

    variant: str
    c: Optional[float] = None
    gamma: Optional[float] = None
    sigma: Optional[float] = None
    k: Optional[int] = None
    beta: Optional[float] = None

    def __post_init__(self):
        v = self.variant
        if v not in VARIANTS:
            raise ParameterError(f"unknown kernel variant {v!r}")
        if v in (LAPLACE, GAUSSIAN):
            if self.c is None or not self.c > 0 or not math.isfinite(self.c):
                raise ParameterError(f"{v} kernel needs c > 0, got {self.c!r}")
        elif v == EXP_POWER:
            if self.gamma is None or not 0 < self.gamma < 2:
                raise ParameterError(f"exp-power kernel needs 0 < gamma < 2, got {self.gamma!r}")
            if self.sigma is None or not self.sigma > 0:
                raise ParameterError(f"exp-power kernel needs sigma > 0, got {self.sigma!r}")
        elif v in (KAPPA1_ITERATE, NTK):
            if self.k is None or int(self.k) != self.k or self.k < 1:
                raise ParameterError(f"{v} needs an integer k >= 1, got {self.k!r}")
            if v == NTK and (self.beta is None or not self.beta >= 0):
                raise ParameterError(f"NTK needs beta >= 0, got {self.beta!r}")

    # constructors -----------------------------------------------------

    @classmethod
    def laplace(cls, c: Optional[float] = None, *, c_tilde: Optional[float] = None) -> "ZonalKernel":
        if (c is None) == (c_tilde is None):
            raise ParameterError("give exactly one of c or c_tilde")
        if c is None:
            c = c_tilde / math.sqrt(2.0)
        return cls(LAPLACE, c=float(c))

    @classmethod
    def gaussian(cls, c: float) -> "ZonalKernel":
        return cls(GAUSSIAN, c=float(c))

    @classmethod
    def exp_power(cls, gamma: float, sigma: float = 1.0) -> "ZonalKernel":
        return cls(EXP_POWER, gamma=float(gamma), sigma=float(sigma))

    @classmethod
    def arccos0(cls) -> "ZonalKernel":
        return cls(ARCCOS0)

    @classmethod
    def arccos1(cls) -> "ZonalKernel":
        return cls(ARCCOS1)

    @classmethod
    def kappa1_iterate(cls, k: int) -> "ZonalKernel":
        return cls(KAPPA1_ITERATE, k=k)

    @classmethod
    def ntk(cls, k: int, beta: float = 0.0) -> "ZonalKernel":
        return cls(NTK, k=k, beta=float(beta))

    # derived quantities ----------------------------------------------

    @property
    def c_tilde(self) -> float:
        """Rate in ``exp(-c_tilde sqrt(1 - u))``; Laplace only."""
        if self.variant != LAPLACE:
            raise ParameterError("c_tilde is only defined for the Laplace kernel")
        return math.sqrt(2.0) * self.c

    @property
    def label(self) -> str:
        v = self.variant
        if v == LAPLACE:
            return f"laplace(c_tilde={self.c_tilde:.12g})"
        if v == GAUSSIAN:
            return f"gaussian(c={self.c:.12g})"
        if v == EXP_POWER:
            return f"exp_power(gamma={self.gamma:.12g},sigma={self.sigma:.12g})"
        if v == KAPPA1_ITERATE:
            return f"kappa1_iterate(k={self.k})"
        if v == NTK:
            return f"ntk(k={self.k},beta={self.beta:.12g})"
        return v

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"variant": self.variant}
        for name in ("c", "gamma", "sigma", "k", "beta"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        if self.variant == LAPLACE:
            out["c_tilde"] = self.c_tilde
        return out

    def value_at_one(self) -> float:
        """``K(1)``, the limit from inside the disk."""
        if self.variant in (LAPLACE, GAUSSIAN, EXP_POWER, ARCCOS0, ARCCOS1, KAPPA1_ITERATE):
            return 1.0
        return (self.k + 1) * (1.0 + self.beta ** 2)

    def value_at_minus_one(self) -> float:
        """``K(-1)``, the limit from inside the disk."""
        v = self.variant
        if v == LAPLACE:
            return math.exp(-self.c_tilde * math.sqrt(2.0))
        if v == GAUSSIAN:
            return math.exp(-4.0 * self.c)
        if v == EXP_POWER:
            return math.exp(-(4.0 ** (self.gamma / 2)) / self.sigma)
        if v == ARCCOS0:
            return 0.0
        if v == ARCCOS1:
            return 0.0
        if v == KAPPA1_ITERATE:
            return iterate_minus_one(self.k)
        return ntk_at_minus_one(self.k, self.beta)


# ---------------------------------------------------------------------------
# complex evaluators


def _as_disk_points(z):
    z = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) >= 1.0):
        raise DomainError("kernels are evaluated on the open unit disk |z| < 1 only")
    return z


def _unwrap(out):
    return complex(out) if np.ndim(out) == 0 else out


def _acos_branch(z):
    # i*log(z + i*sqrt(1 - z^2)); (1-z)(1+z) avoids cancellation near +-1
    root = np.sqrt((1.0 - z) * (1.0 + z))
    return 1j * np.log(z + 1j * root), root


def _kappa0(z):
    ilog, _ = _acos_branch(z)
    return (np.pi + ilog) / np.pi


def _kappa1(z):
    ilog, root = _acos_branch(z)
    return (z * (np.pi + ilog) + root) / np.pi


def eval_kappa0(z):
    """Arc-cosine kernel of degree 0, ``(pi - arccos z) / pi``."""
    z = _as_disk_points(z)
    return _unwrap(_kappa0(z))


def eval_kappa1(z):
    """Arc-cosine kernel of degree 1, ``(z (pi - arccos z) + sqrt(1 - z^2)) / pi``."""
    z = _as_disk_points(z)
    return _unwrap(_kappa1(z))


def eval_kappa1_iterate(k: int, z):
    """``k``-fold composition of ``kappa1``."""
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    z = _as_disk_points(z)
    out = z
    for _ in range(int(k)):
        out = _kappa1(out)
    return _unwrap(out)


def _ntk(k, beta, z):
    b2 = beta * beta
    sigma = z
    total = z + b2
    for _ in range(k):
        nxt = _kappa1(sigma)
        total = nxt + total * _kappa0(sigma) + b2
        sigma = nxt
    return total


def eval_ntk(k: int, beta: float, z):
    """ReLU NTK of a ``(k+1)``-layer network with bias scale ``beta``.

    Runs the recursion ``N_j = kappa1^(j) + N_{j-1} kappa0(kappa1^(j-1)) + beta^2``
    from ``N_0 = z + beta^2``.
    """
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    if not beta >= 0:
        raise ParameterError(f"beta must be nonnegative, got {beta!r}")
    z = _as_disk_points(z)
    return _unwrap(_ntk(int(k), float(beta), z))


def eval_zonal(kernel: ZonalKernel, z):
    """Evaluate any :class:`ZonalKernel` at points of the open unit disk."""
    z = _as_disk_points(z)
    v = kernel.variant
    if v == LAPLACE:
        out = np.exp(-kernel.c_tilde * np.sqrt(1.0 - z))
    elif v == GAUSSIAN:
        out = np.exp(-2.0 * kernel.c * (1.0 - z))
    elif v == EXP_POWER:
        out = np.exp(-((2.0 * (1.0 - z)) ** (kernel.gamma / 2.0)) / kernel.sigma)
    elif v == ARCCOS0:
        out = _kappa0(z)
    elif v == ARCCOS1:
        out = _kappa1(z)
    elif v == KAPPA1_ITERATE:
        out = z
        for _ in range(kernel.k):
            out = _kappa1(out)
    else:
        out = _ntk(kernel.k, kernel.beta, z)
    return _unwrap(out)


# ---------------------------------------------------------------------------
# real endpoint quantities


def kappa0_real(u: float) -> float:
    u = min(1.0, max(-1.0, u))
    return (math.pi - math.acos(u)) / math.pi


def kappa1_real(u: float) -> float:
    u = min(1.0, max(-1.0, u))
    return (u * (math.pi - math.acos(u)) + math.sqrt((1.0 - u) * (1.0 + u))) / math.pi


def iterate_minus_one(k: int) -> float:
    """``a_k = kappa1^(k)(-1)`` by plain real iteration; ``a_1 = 0``."""
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    a = -1.0
    for _ in range(int(k)):
        a = kappa1_real(a)
    return a


def ntk_at_minus_one(k: int, beta: float) -> float:
    """``N_k(-1)`` from ``N_j(-1) = a_j + beta^2 + N_{j-1}(-1) kappa0(a_{j-1})``.

    Starts from ``N_0(-1) = beta^2 - 1`` and ``a_0 = -1``.
    """
    b2 = beta * beta
    prev_a = -1.0
    total = -1.0 + b2
    for _ in range(int(k)):
        a = kappa1_real(prev_a)
        total = a + b2 + total * kappa0_real(prev_a)
        prev_a = a
    return total
