"""Continuous nonlinear Fourier transform and its two discretizations.

Conventions: the transform of ``u`` at spectral index ``n`` is the gauged
transfer matrix over ``[0, 1]``, i.e. ``(-1)**n`` times the solution at
``x = 1`` of ``Phi' = L Phi`` with ``L = [[i pi n, u], [-conj(u), -i pi n]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import simpson

from . import matrix as mc
from .matrix import Matrix2c


@dataclass(frozen=True)
class Signal:
    """Samples ``u_0..u_{N-1}`` of a step profile on ``[0, 1]``."""

    samples: np.ndarray
    real_valued: bool = field(init=False)

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.complex128, ndmin=1)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a signal needs at least one sample")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "real_valued", bool(np.all(arr.imag == 0)))

    @classmethod
    def constant(cls, u: complex, N: int) -> "Signal":
        if N < 1:
            raise ValueError("N must be at least 1")
        return cls(np.full(N, u, dtype=np.complex128))

    @classmethod
    def sampled(cls, func, N: int) -> "Signal":
        """Sample ``func`` at the left endpoints ``l / N``."""
        return cls(np.array([func(l / N) for l in range(N)], dtype=np.complex128))

    @property
    def N(self) -> int:
        return self.samples.size

    @property
    def real(self) -> np.ndarray:
        self.require_real()
        return self.samples.real

    def require_real(self) -> None:
        if not self.real_valued:
            raise ValueError("operation is defined for real-valued signals only")


@dataclass(frozen=True)
class SpectralSequence:
    """Matrices indexed by spectral index ``n``."""

    N: int
    indices: tuple[int, ...]
    values: np.ndarray  # shape (len(indices), 2, 2)

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.complex128)
        if vals.shape != (len(self.indices), 2, 2):
            raise ValueError("values must have shape (len(indices), 2, 2)")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("duplicate spectral index")
        vals.flags.writeable = False
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        object.__setattr__(self, "values", vals)

    def __getitem__(self, n: int) -> Matrix2c:
        return self.values[self.indices.index(n)]

    def __len__(self) -> int:
        return len(self.indices)

    def covers_discrete_range(self) -> bool:
        return set(self.indices) == set(range(self.N))

    def ordered(self) -> np.ndarray:
        """Values reordered by ``n = 0..N-1``; requires full coverage."""
        if not self.covers_discrete_range():
            raise ValueError("sequence does not cover n = 0..N-1")
        order = np.argsort(self.indices)
        return self.values[order]


def _as_signal(u) -> Signal:
    return u if isinstance(u, Signal) else Signal(u)


def _check_index(n: int, N: int) -> None:
    if not 0 <= n < N:
        raise IndexError(f"spectral index {n} outside 0..{N - 1}")


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def nlft_constant(u: float, n: int) -> Matrix2c:
    """Exact transform of the constant profile ``u`` at index ``n``."""
    L = np.array([[1j * np.pi * n, u], [-np.conj(u), -1j * np.pi * n]])
    return mc.freeze(_sign(n) * mc.exp_traceless(L))


def nlft_step(u, n: int) -> Matrix2c:
    """Exact transform of the step profile with the given samples."""
    sig = _as_signal(u)
    N = sig.N
    out = np.eye(2, dtype=np.complex128)
    for ul in sig.samples[::-1]:
        L = np.array([[1j * np.pi * n, ul], [-np.conj(ul), -1j * np.pi * n]]) / N
        out = out @ mc.exp_traceless(L)
    return mc.freeze(_sign(n) * out)


def _gauged_coefficients(sig: Signal, n: int, x: np.ndarray, at: np.ndarray) -> np.ndarray:
    # phases at the nodes x, step samples taken at the points `at`
    idx = np.minimum((at * sig.N).astype(int), sig.N - 1)
    vals = sig.samples[idx]
    phase = np.exp(-2j * np.pi * n * x)
    L = np.zeros((x.size, 2, 2), dtype=np.complex128)
    L[:, 0, 1] = phase * vals
    L[:, 1, 0] = -np.conj(phase * vals)
    return L


def dyson_terms(u, n: int, d_max: int, m_quad: int) -> list[Matrix2c]:
    """Per-order Dyson terms at ``x = 1`` for orders ``1..d_max``.

    Order ``d`` is obtained from order ``d - 1`` by one cumulative trapezoid
    pass of ``L^G(x) Phi_{d-1}(x)`` on an ``m_quad``-point uniform grid.  On
    each grid interval the step profile is read at the interval midpoint, so
    jumps sitting on grid nodes do not leak into neighbouring intervals.
    """
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    if m_quad < 2:
        raise ValueError("m_quad must be at least 2")
    sig = _as_signal(u)
    x = np.linspace(0.0, 1.0, m_quad)
    h = x[1] - x[0]
    mid = 0.5 * (x[1:] + x[:-1])
    L_left = _gauged_coefficients(sig, n, x[:-1], mid)
    L_right = _gauged_coefficients(sig, n, x[1:], mid)
    phi = np.broadcast_to(np.eye(2, dtype=np.complex128), (m_quad, 2, 2))
    terms = []
    for _ in range(d_max):
        incr = 0.5 * h * (L_left @ phi[:-1] + L_right @ phi[1:])
        nxt = np.zeros((m_quad, 2, 2), dtype=np.complex128)
        nxt[1:] = np.cumsum(incr, axis=0)
        phi = nxt
        terms.append(mc.freeze(phi[-1]))
    return terms


def nlft_dyson(u, n: int, d_max: int, m_quad: int) -> Matrix2c:
    """Dyson series truncated at order ``d_max``."""
    out = np.eye(2, dtype=np.complex128)
    for term in dyson_terms(u, n, d_max, m_quad):
        out = out + term
    return mc.freeze(out)


def volume_expansion_terms(u: float, n: int, d_max: int, m_quad: int) -> list[Matrix2c]:
    """Terms ``u**d * int_0^1 Vol(D_d(l)) E(-2l, n) J**d dl`` for ``d = 1..d_max``."""
    from .distributions import vol_formula

    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    if m_quad < 2 or m_quad % 2:
        raise ValueError("m_quad must be a positive even panel count")
    if np.imag(u) != 0:
        raise ValueError("volume expansion is defined for real amplitudes only")
    u = float(np.real(u))
    l = np.linspace(0.0, 1.0, m_quad + 1)
    phase = np.exp(-2j * np.pi * n * l)
    terms = []
    for d in range(1, d_max + 1):
        vol = np.array([vol_formula(d, x) for x in l])
        w = simpson(vol * phase, x=l)
        E = np.array([[w, 0], [0, simpson(vol * np.conj(phase), x=l)]])
        terms.append(mc.freeze(u**d * E @ mc.j_power(d)))
    return terms


def nlft_volume_expansion(u: float, n: int, d_max: int, m_quad: int) -> Matrix2c:
    out = np.eye(2, dtype=np.complex128)
    for term in volume_expansion_terms(u, n, d_max, m_quad):
        out = out + term
    return mc.freeze(out)


def _phases(N: int, ns: np.ndarray, l: int) -> np.ndarray:
    # exp(-2 pi i l n / N), exact integer reduction of the exponent
    return np.exp(-2j * np.pi * ((l * ns) % N) / N)


def _f_n_batch(sig: Signal, ns: np.ndarray) -> np.ndarray:
    N = sig.N
    out = np.broadcast_to(np.eye(2, dtype=np.complex128), (ns.size, 2, 2)).copy()
    for k in range(N - 1, -1, -1):
        uk = sig.samples[k]
        ph = _phases(N, ns, k)
        fac = np.broadcast_to(np.eye(2, dtype=np.complex128), (ns.size, 2, 2)).copy()
        fac[:, 0, 1] = ph * uk / N
        fac[:, 1, 0] = -np.conj(ph * uk) / N
        out = out @ fac
    return out


def _g_n_batch(u: np.ndarray, ns: np.ndarray) -> np.ndarray:
    N = u.size
    out = np.broadcast_to(np.eye(2, dtype=np.complex128), (ns.size, 2, 2)).copy()
    for l in range(N - 1, -1, -1):
        c, s = np.cos(u[l] / N), np.sin(u[l] / N)
        ph = _phases(N, ns, l)
        fac = np.zeros((ns.size, 2, 2), dtype=np.complex128)
        fac[:, 0, 0] = c
        fac[:, 1, 1] = c
        fac[:, 0, 1] = s * ph
        fac[:, 1, 0] = -s * np.conj(ph)
        out = out @ fac
    return out


def f_n(u, n: int) -> Matrix2c:
    """Forward-difference discretization: ``prod_{k=N-1..0} (I + L_N(k, n) / N)``."""
    sig = _as_signal(u)
    _check_index(n, sig.N)
    return mc.freeze(_f_n_batch(sig, np.array([n]))[0])


def g_n(u, n: int) -> Matrix2c:
    """Splitting discretization ``prod_{l=N-1..0} (cos(u_l/N) I + sin(u_l/N) E_d(-2l, n) J)``.

    This is the rotation-product form; it takes values in SU(2).
    """
    sig = _as_signal(u)
    _check_index(n, sig.N)
    return mc.freeze(_g_n_batch(sig.real, np.array([n]))[0])


def g_n_split(u, n: int) -> Matrix2c:
    """Phase/rotation split form ``E_d(1, n) R(u_{N-1}/N) ... E_d(1, n) R(u_0/N)``.

    Telescoping the phases shows this equals ``(-1)**n * g_n(u, n)``.
    """
    sig = _as_signal(u)
    _check_index(n, sig.N)
    N = sig.N
    step = mc.e_delta(1, n, N)
    return mc.matprod(step @ mc.rotation(ul / N) for ul in sig.real[::-1])


def tan_signal(u) -> Signal:
    """Signal ``N * tan(u_l / N)`` that links ``g_n`` to ``f_n``."""
    sig = _as_signal(u)
    N = sig.N
    return Signal(N * np.tan(sig.real / N))


def cos_prefactor(u) -> float:
    sig = _as_signal(u)
    return float(np.prod(np.cos(sig.real / sig.N)))


_KINDS = ("F_N", "G_N", "step")


def spectral_table(kind: str, u, ns: Iterable[int] | None = None) -> SpectralSequence:
    """Evaluate a transform at every ``n`` in ``ns`` (default ``0..N-1``)."""
    sig = _as_signal(u)
    N = sig.N
    idx = np.arange(N) if ns is None else np.array(list(ns), dtype=int)
    if kind == "F_N":
        for n in idx:
            _check_index(int(n), N)
        vals = _f_n_batch(sig, idx)
    elif kind == "G_N":
        for n in idx:
            _check_index(int(n), N)
        vals = _g_n_batch(sig.real, idx)
    elif kind == "step":
        vals = np.array([nlft_step(sig, int(n)) for n in idx])
    else:
        raise ValueError(f"unknown transform kind {kind!r}; expected one of {_KINDS}")
    return SpectralSequence(N, tuple(int(n) for n in idx), vals)


def det_f_n_expected(u: Sequence[complex]) -> float:
    """Determinant of ``f_n`` predicted factor by factor."""
    sig = _as_signal(u)
    return float(np.prod(1 + np.abs(sig.samples) ** 2 / sig.N**2))
