"""Recovering partition counts and alternating probabilities from the transforms.

Every route has the same shape: expand a discretized transform in powers of
the signal, take the inverse DFT over the spectral index to isolate one
phase ``E_d(-2l, n)``, strip the trailing ``J**d`` and read off a scalar.
The inverse DFT here carries the ``1/N`` factor, so the read-off is exact.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import matrix as mc
from .jets import Jet, JetMatrix
from .multipoly import DEFAULT_TERM_BUDGET, MultiPolyMatrix, TermBudgetExceeded, term_count
from .partitions import alt, compositions
from .transforms import Signal, SpectralSequence

SCALAR_TOL = 1e-9
ROUNDING_TOL = 1e-6
SIMPLEX_TOL = 1e-12


def idft_matrix(seq: SpectralSequence, l: int) -> np.ndarray:
    """``(1/N) sum_n E_d(2l, n) seq(n)`` over ``n = 0..N-1``."""
    N = seq.N
    vals = seq.ordered()
    n = np.arange(N)
    ph = np.exp(2j * np.pi * ((l * n) % N) / N)
    out = np.empty((2, 2), dtype=np.complex128)
    out[0] = (ph[:, None] * vals[:, 0, :]).sum(axis=0) / N
    out[1] = (np.conj(ph)[:, None] * vals[:, 1, :]).sum(axis=0) / N
    return mc.freeze(out)


def scalar_part(M: np.ndarray, tol: float = SCALAR_TOL) -> complex:
    """The scalar ``c`` of a matrix ``M = c I``; raises if ``M`` is not scalar."""
    off = max(abs(M[0, 1]), abs(M[1, 0]), abs(M[0, 0] - M[1, 1]))
    if off > tol:
        raise ArithmeticError(f"expected a scalar matrix, deviation {off:.3e}")
    return complex(M[0, 0])


class Extracted(NamedTuple):
    value: int
    raw: complex
    residue: float


def _round_count(raw: complex, what: str) -> Extracted:
    value = round(raw.real)
    residue = abs(raw - value)
    if residue >= ROUNDING_TOL:
        raise ArithmeticError(f"{what}: value {raw} is {residue:.3e} away from an integer")
    return Extracted(int(value), raw, residue)


# distinct parts -----------------------------------------------------------

def f_n_poly(N: int, n: int, cap: int) -> JetMatrix:
    """``f_n`` of the constant signal ``u`` as a polynomial in ``u`` truncated at ``cap``."""
    if not 0 <= cap <= N:
        raise ValueError(f"cap={cap} must lie in 0..N")
    out = JetMatrix.constant(mc.IDENTITY, cap)
    u = Jet.variable(cap, scale=1.0 / N)
    for k in range(N - 1, -1, -1):
        step = JetMatrix.constant(mc.IDENTITY, cap) + JetMatrix.from_scalar(
            u, mc.e_delta(-2 * k, n, N) @ mc.J
        )
        out = out @ step
    return out


@lru_cache(maxsize=64)
def _f_n_coefficients(N: int) -> np.ndarray:
    # [n, degree] -> coefficient matrix, all degrees up to N
    return np.array([f_n_poly(N, n, N).coeffs for n in range(N)])


def extract_aq_raw(N: int, l: int, d: int) -> complex:
    """Unrounded ``N**d`` times the scalar read-off for ``AQ_N(l, d)``."""
    if not 1 <= d <= N or not 0 <= l < N:
        raise ValueError(f"need 1 <= d <= N and 0 <= l < N (N={N}, l={l}, d={d})")
    seq = SpectralSequence(N, tuple(range(N)), _f_n_coefficients(N)[:, d])
    M = idft_matrix(seq, l) @ mc.j_power(-d)
    return scalar_part(M) * N**d


def extract_aq(N: int, l: int, d: int) -> int:
    return _round_count(extract_aq_raw(N, l, d), f"AQ_{N}({l}, {d})").value


def extract_aq_checked(N: int, l: int, d: int) -> Extracted:
    return _round_count(extract_aq_raw(N, l, d), f"AQ_{N}({l}, {d})")


# non-distinct parts --------------------------------------------------------

def _g_factor_taylor(N: int, n: int, l: int, cap: int) -> MultiPolyMatrix:
    # cos(u_l/N) I + sin(u_l/N) E_d(-2l, n) J as a Taylor polynomial in u_l
    EJ = mc.e_delta(-2 * l, n, N) @ mc.J
    terms = {}
    for k in range(cap + 1):
        e = [0] * N
        e[l] = k
        base = EJ if k % 2 else mc.IDENTITY
        terms[tuple(e)] = base @ mc.j_power(k - (k % 2)) / (math.factorial(k) * N**k)
    return MultiPolyMatrix(N, cap, terms)


def g_n_multipoly(N: int, n: int, cap: int, budget: int = DEFAULT_TERM_BUDGET) -> MultiPolyMatrix:
    """Multivariate Taylor polynomial of ``g_n`` in ``u_0..u_{N-1}`` up to total degree ``cap``."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if term_count(N, cap) > budget:
        raise TermBudgetExceeded(
            f"{term_count(N, cap)} monomials for N={N}, cap={cap} exceeds budget {budget}"
        )
    out = MultiPolyMatrix.constant(N, cap, mc.IDENTITY)
    for l in range(N - 1, -1, -1):
        out = out @ _g_factor_taylor(N, n, l, cap)
    return out


def leibniz_derivative(poly: MultiPolyMatrix, d: int) -> MultiPolyMatrix:
    """``(d/ds)**d f(s u)`` at ``s = 0``: the degree-``d`` part scaled by ``d!``."""
    scale = math.factorial(d)
    return MultiPolyMatrix(
        poly.n_vars, poly.cap, {k: v * scale for k, v in poly.homogeneous(d).items()}
    )


def _factorial_weight(k) -> int:
    return math.prod(math.factorial(kj) for kj in k)


def d_operator(poly: MultiPolyMatrix, d: int, full: bool = False) -> np.ndarray:
    """Sum of all mixed partials of order vector ``k`` at ``u = 0``.

    By default only ``|k|_1 = d`` is summed; ``full=True`` runs over the whole
    box ``[0, d]**N``.
    """
    ks = itertools.product(range(d + 1), repeat=poly.n_vars) if full else compositions(d, poly.n_vars)
    out = np.zeros((2, 2), dtype=np.complex128)
    for k in ks:
        if k in poly.terms:
            out = out + poly.terms[k] * _factorial_weight(k)
    return out


@lru_cache(maxsize=64)
def _ap_contractions(N: int, d: int) -> np.ndarray:
    return np.array(
        [d_operator(leibniz_derivative(g_n_multipoly(N, n, d), d), d) for n in range(N)]
    )


def extract_ap_raw(N: int, l: int, d: int) -> complex:
    if d < 1 or not 0 <= l < N:
        raise ValueError(f"need d >= 1 and 0 <= l < N (N={N}, l={l}, d={d})")
    seq = SpectralSequence(N, tuple(range(N)), _ap_contractions(N, d))
    M = idft_matrix(seq, l) @ mc.j_power(-d)
    return scalar_part(M) * N**d / math.factorial(d)


def extract_ap(N: int, l: int, d: int) -> int:
    return _round_count(extract_ap_raw(N, l, d), f"AP_{N}({l}, {d})").value


# jets of the splitting transform --------------------------------------------

def g_n_jet(u, n: int, order: int) -> JetMatrix:
    """``g_n(s u, n)`` as a truncated series in ``s``."""
    sig = u if isinstance(u, Signal) else Signal(u)
    N = sig.N
    out = JetMatrix.constant(mc.IDENTITY, order)
    for l in range(N - 1, -1, -1):
        sin, cos = Jet.variable(order, scale=sig.real[l] / N).sin_cos()
        factor = JetMatrix.from_scalar(cos, mc.IDENTITY) + JetMatrix.from_scalar(
            sin, mc.e_delta(-2 * l, n, N) @ mc.J
        )
        out = out @ factor
    return out


def d_jet(u, n: int, d: int) -> np.ndarray:
    """``(d/ds)**d g_n(s u, n)`` at ``s = 0``."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return mc.freeze(g_n_jet(u, n, d).derivative(d))


# multinomial route ---------------------------------------------------------

def _check_simplex(u) -> np.ndarray:
    sig = u if isinstance(u, Signal) else Signal(u)
    x = sig.real
    if np.any(x < 0) or abs(x.sum() - 1) > SIMPLEX_TOL:
        raise ValueError("probabilities must be non-negative and sum to 1")
    return x


def p_alt_table(u, d: int) -> np.ndarray:
    """``P_alt(l)`` for all ``l`` through the transform route."""
    x = _check_simplex(u)
    N = x.size
    if d < 1:
        raise ValueError("d must be at least 1")
    seq = SpectralSequence(N, tuple(range(N)), [d_jet(x, n, d) for n in range(N)])
    out = np.empty(N)
    for l in range(N):
        M = idft_matrix(seq, l) @ mc.j_power(-d) * N**d
        out[l] = scalar_part(M).real
    return out


def p_alt(u, d: int, l: int) -> float:
    """Probability that a multinomial draw ``k`` has ``alt(k) = l``, via ``g_n``."""
    x = _check_simplex(u)
    if not 0 <= l < x.size:
        raise ValueError(f"l={l} outside 0..{x.size - 1}")
    return float(p_alt_table(x, d)[l])


def multinomial_pmf(u, k) -> float:
    d = sum(k)
    coef = math.factorial(d) // _factorial_weight(k)
    return coef * math.prod(float(uj) ** kj for uj, kj in zip(u, k))


def p_alt_direct_table(u, d: int) -> np.ndarray:
    x = _check_simplex(u)
    out = np.zeros(x.size)
    for k in compositions(d, x.size):
        out[alt(k)] += multinomial_pmf(x, k)
    return out


def p_alt_direct(u, d: int, l: int) -> float:
    """Same probability by direct enumeration of ``k``."""
    x = _check_simplex(u)
    if not 0 <= l < x.size:
        raise ValueError(f"l={l} outside 0..{x.size - 1}")
    return float(p_alt_direct_table(x, d)[l])
