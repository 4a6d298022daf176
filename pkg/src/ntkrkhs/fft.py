"""Iterative radix-2 decimation-in-time FFT.

Butterflies are applied stage by stage in a fixed order, so results are
bit-reproducible for a given input.  ``dft`` is the O(M^2) reference.
"""

from __future__ import annotations

import numpy as np


def is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


def bit_reverse_permutation(m: int) -> np.ndarray:
    bits = m.bit_length() - 1
    idx = np.arange(m)
    rev = np.zeros(m, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft(x) -> np.ndarray:
    """Forward transform ``X[n] = sum_m x[m] exp(-2 pi i n m / M)``."""
    x = np.asarray(x, dtype=complex)
    m = x.shape[0]
    if x.ndim != 1 or not is_power_of_two(m):
        raise ValueError(f"fft needs a 1-d array whose length is a power of two, got shape {x.shape}")
    a = x[bit_reverse_permutation(m)]
    # twiddles for the final stage; earlier stages take strided subsets
    twiddle = np.exp(-2j * np.pi * np.arange(m // 2) / m)
    half = 1
    while half < m:
        span = 2 * half
        w = twiddle[:: m // span]
        blocks = a.reshape(-1, span)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * w
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        a = blocks.reshape(m)
        half = span
    return a


def ifft(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return np.conj(fft(np.conj(x))) / x.shape[0]


def dft(x) -> np.ndarray:
    """Direct O(M^2) transform, used only as a correctness reference."""
    x = np.asarray(x, dtype=complex)
    m = x.shape[0]
    k = np.arange(m)
    return np.exp(-2j * np.pi * np.outer(k, k) / m) @ x
