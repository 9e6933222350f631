"""Small shared helpers: growable numpy arrays and exact integer math."""

from __future__ import annotations

import math

import mpmath
import numpy as np


class GrowableArray:
    """Append-only numpy array with amortized O(1) growth.

    `data` is over-allocated; the live prefix has length `n`. Kernels
    receive `self.data` directly and index below `n`.
    """

    __slots__ = ("data", "n", "_fill")

    def __init__(self, dtype, capacity=16, fill=0):
        self.data = np.full(capacity, fill, dtype=dtype)
        self.n = 0
        self._fill = fill

    def __len__(self):
        return self.n

    def reserve(self, extra):
        need = self.n + extra
        if need > self.data.size:
            cap = max(need, self.data.size * 2)
            grown = np.full(cap, self._fill, dtype=self.data.dtype)
            grown[: self.n] = self.data[: self.n]
            self.data = grown

    def extend(self, values):
        values = np.asarray(values, dtype=self.data.dtype)
        self.reserve(values.size)
        self.data[self.n : self.n + values.size] = values
        self.n += values.size

    def append(self, value):
        self.reserve(1)
        self.data[self.n] = value
        self.n += 1

    def extend_fill(self, count):
        """Append `count` copies of the fill value."""
        self.reserve(count)
        self.n += count

    def view(self):
        return self.data[: self.n]


def ceil_sqrt(m: int) -> int:
    """Exact ceil(sqrt(m)) for nonnegative integers."""
    if m <= 0:
        return 0
    return math.isqrt(m - 1) + 1


def floor_pow(n: int, alpha: float, scale: float = 1.0) -> int:
    """floor(scale * n**alpha) with a near-integer guard.

    libm pow can land a hair below an exact integer (e.g. 81**0.25),
    which would flip the floor. When the fast result is within 1e-9 of
    an integer, recompute at 50 digits.
    """
    t = scale * math.pow(n, alpha)
    if abs(t - round(t)) < 1e-9:
        with mpmath.workdps(50):
            t_mp = mpmath.mpf(scale) * mpmath.power(n, alpha)
            return int(mpmath.floor(t_mp + mpmath.mpf("1e-30")))
    return math.floor(t)


def ceil_mul(x: float, n: int) -> int:
    """ceil(x * n) with a near-integer guard (same rationale as floor_pow)."""
    t = x * n
    if abs(t - round(t)) < 1e-9:
        with mpmath.workdps(50):
            t_mp = mpmath.mpf(x) * n
            return int(mpmath.ceil(t_mp - mpmath.mpf("1e-30")))
    return math.ceil(t)
