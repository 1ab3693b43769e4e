"""Truncated Taylor series in one formal variable ``s``.

``Jet`` carries scalar coefficients, ``JetMatrix`` carries 2x2 matrix
coefficients.  Both truncate every product at their order.
"""

from __future__ import annotations

import math

import numpy as np


class Jet:
    """Scalar truncated Taylor series ``sum_k c[k] s**k``, ``k <= order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128, ndmin=1)
        c.flags.writeable = False
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def variable(cls, order: int, scale: complex = 1.0, value: complex = 0.0) -> "Jet":
        """The jet of ``value + scale * s``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        if order >= 1:
            c[1] = scale
        return cls(c)

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet orders differ")
            return other
        c = np.zeros(self.order + 1, dtype=np.complex128)
        c[0] = other
        return Jet(c)

    def __add__(self, other):
        return Jet(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return Jet(self.coeffs - self._coerce(other).coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * other)
        o = self._coerce(other)
        return Jet(np.convolve(self.coeffs, o.coeffs)[: self.order + 1])

    __rmul__ = __mul__

    def sin_cos(self) -> tuple["Jet", "Jet"]:
        """``(sin(x), cos(x))`` of this jet by the coupled coefficient recurrence."""
        x = self.coeffs
        D = self.order
        s = np.zeros(D + 1, dtype=np.complex128)
        c = np.zeros(D + 1, dtype=np.complex128)
        s[0], c[0] = np.sin(x[0]), np.cos(x[0])
        j = np.arange(D + 1)
        for k in range(1, D + 1):
            jx = j[1 : k + 1] * x[1 : k + 1]
            s[k] = np.dot(jx, c[k - 1 :: -1][:k]) / k
            c[k] = -np.dot(jx, s[k - 1 :: -1][:k]) / k
        return Jet(s), Jet(c)

    def sin(self) -> "Jet":
        return self.sin_cos()[0]

    def cos(self) -> "Jet":
        return self.sin_cos()[1]

    def derivative(self, k: int) -> complex:
        """``k``-th derivative at ``s = 0``."""
        return complex(self.coeffs[k] * math.factorial(k))


class JetMatrix:
    """Truncated Taylor series with 2x2 complex matrix coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128)
        if c.ndim != 3 or c.shape[1:] != (2, 2):
            raise ValueError("coefficients must have shape (order + 1, 2, 2)")
        c.flags.writeable = False
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @classmethod
    def constant(cls, M, order: int) -> "JetMatrix":
        c = np.zeros((order + 1, 2, 2), dtype=np.complex128)
        c[0] = M
        return cls(c)

    @classmethod
    def from_scalar(cls, jet: Jet, M) -> "JetMatrix":
        """The jet ``jet(s) * M`` for a constant matrix ``M``."""
        return cls(jet.coeffs[:, None, None] * np.asarray(M)[None, :, :])

    def __add__(self, other: "JetMatrix") -> "JetMatrix":
        if other.order != self.order:
            raise ValueError("jet orders differ")
        return JetMatrix(self.coeffs + other.coeffs)

    def __matmul__(self, other: "JetMatrix") -> "JetMatrix":
        if other.order != self.order:
            raise ValueError("jet orders differ")
        D = self.order
        out = np.zeros_like(self.coeffs)
        for i in range(D + 1):
            out[i:] += np.einsum("ab,kbc->kac", self.coeffs[i], other.coeffs[: D + 1 - i])
        return JetMatrix(out)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.coeffs[k]

    def derivative(self, k: int) -> np.ndarray:
        return self.coeffs[k] * math.factorial(k)

    def evaluate(self, s: complex) -> np.ndarray:
        """Horner evaluation of the truncated series at ``s``."""
        out = np.zeros((2, 2), dtype=np.complex128)
        for c in self.coeffs[::-1]:
            out = out * s + c
        return out
