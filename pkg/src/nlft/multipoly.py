"""Sparse multivariate polynomials with 2x2 matrix coefficients, truncated in total degree."""

from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

DEFAULT_TERM_BUDGET = 10**6


class TermBudgetExceeded(RuntimeError):
    pass


def term_count(n_vars: int, cap: int) -> int:
    """Number of monomials in ``n_vars`` variables of total degree ``<= cap``."""
    return math.comb(n_vars + cap, cap)


class MultiPolyMatrix:
    """Map from exponent vectors ``k`` (``sum(k) <= cap``) to 2x2 coefficients."""

    __slots__ = ("n_vars", "cap", "terms")

    def __init__(self, n_vars: int, cap: int, terms: Mapping[tuple[int, ...], np.ndarray] = ()):
        self.n_vars = n_vars
        self.cap = cap
        stored = {}
        for k, v in dict(terms).items():
            k = tuple(int(x) for x in k)
            if len(k) != n_vars:
                raise ValueError(f"exponent {k} has wrong length")
            if sum(k) > cap:
                continue
            arr = np.array(v, dtype=np.complex128)
            arr.flags.writeable = False
            stored[k] = arr
        self.terms = stored

    @classmethod
    def constant(cls, n_vars: int, cap: int, M) -> "MultiPolyMatrix":
        return cls(n_vars, cap, {(0,) * n_vars: M})

    def __add__(self, other: "MultiPolyMatrix") -> "MultiPolyMatrix":
        self._compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return MultiPolyMatrix(self.n_vars, self.cap, out)

    def __matmul__(self, other: "MultiPolyMatrix") -> "MultiPolyMatrix":
        self._compatible(other)
        out: dict[tuple[int, ...], np.ndarray] = {}
        for ka, va in self.terms.items():
            da = sum(ka)
            for kb, vb in other.terms.items():
                if da + sum(kb) > self.cap:
                    continue
                k = tuple(x + y for x, y in zip(ka, kb))
                prod = va @ vb
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return MultiPolyMatrix(self.n_vars, self.cap, out)

    def _compatible(self, other: "MultiPolyMatrix") -> None:
        if (self.n_vars, self.cap) != (other.n_vars, other.cap):
            raise ValueError("polynomials live in different truncated rings")

    def coefficient(self, k: Iterable[int]) -> np.ndarray:
        k = tuple(k)
        if k in self.terms:
            return self.terms[k]
        return np.zeros((2, 2), dtype=np.complex128)

    def homogeneous(self, degree: int) -> dict[tuple[int, ...], np.ndarray]:
        return {k: v for k, v in self.terms.items() if sum(k) == degree}

    def evaluate(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.complex128)
        out = np.zeros((2, 2), dtype=np.complex128)
        for k, v in self.terms.items():
            out = out + np.prod(u ** np.array(k)) * v
        return out

    def __len__(self) -> int:
        return len(self.terms)
