"""2x2 complex matrix building blocks.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype
``complex128``.  Every constructor here returns a read-only array so values
can be shared freely between callers and threads.
"""

from __future__ import annotations

import numpy as np

Matrix2c = np.ndarray

_SINC_SWITCH = 1e-4


def freeze(a: np.ndarray) -> np.ndarray:
    """Return ``a`` as a read-only complex array (copying when needed)."""
    out = np.array(a, dtype=np.complex128, copy=True)
    out.flags.writeable = False
    return out


IDENTITY = freeze(np.eye(2))
J = freeze([[0, 1], [-1, 0]])
_J_POWERS = (IDENTITY, J, freeze(-np.eye(2)), freeze(-J))


def identity() -> Matrix2c:
    return IDENTITY


def e_matrix(x: float, n: float) -> Matrix2c:
    """``diag(exp(i pi x n), exp(-i pi x n))``."""
    phase = np.exp(1j * np.pi * x * n)
    return freeze([[phase, 0], [0, np.conj(phase)]])


def e_delta(l: int, n: int, N: int) -> Matrix2c:
    """Discrete phase matrix ``e_matrix(l, n / N)``.

    The phase is reduced modulo ``2N`` in exact integer arithmetic before
    exponentiation, so large shifts do not lose precision.
    """
    if N == 0:
        raise ValueError("grid size N must be nonzero")
    k = (l * n) % (2 * N)
    phase = np.exp(1j * np.pi * k / N)
    return freeze([[phase, 0], [0, np.conj(phase)]])


def j_power(d: int) -> Matrix2c:
    """``J**d`` for any integer ``d``; period 4."""
    return _J_POWERS[d % 4]


def rotation(theta: float) -> Matrix2c:
    c, s = np.cos(theta), np.sin(theta)
    return freeze([[c, s], [-s, c]])


def _sinc(w: complex) -> complex:
    if abs(w) < _SINC_SWITCH:
        w2 = w * w
        return 1 - w2 / 6 + w2 * w2 / 120 - w2 * w2 * w2 / 5040
    return np.sin(w) / w


def exp_traceless(A: Matrix2c) -> Matrix2c:
    """Closed-form exponential of a traceless 2x2 matrix.

    Uses ``A @ A = -det(A) I`` so that ``exp(A) = cos(w) I + sin(w)/w A`` with
    ``w**2 = det(A)``.  ``w`` is taken on the principal complex branch; both
    ``cos`` and ``sin(w)/w`` are even in ``w`` so the branch choice does not
    matter, and a negative determinant turns into ``cosh``/``sinh``.
    """
    A = np.asarray(A, dtype=np.complex128)
    scale = max(1.0, float(np.abs(A).max()))
    if abs(A[0, 0] + A[1, 1]) > 1e-12 * scale:
        raise ValueError("exp_traceless requires a traceless matrix")
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    w = np.sqrt(complex(det))
    return freeze(np.cos(w) * np.eye(2) + _sinc(w) * A)


def det(A: Matrix2c) -> complex:
    return complex(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])


def max_norm(A: np.ndarray) -> float:
    """Largest absolute entry."""
    return float(np.abs(A).max())


def is_su2(A: Matrix2c, tol: float = 1e-10) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.asarray(A)
    if abs(det(A) - 1) > tol:
        return False
    return max_norm(A.conj().T @ A - np.eye(2)) <= tol


def matprod(factors) -> Matrix2c:
    """Left-to-right product of an iterable of 2x2 matrices."""
    out = np.eye(2, dtype=np.complex128)
    for f in factors:
        out = out @ f
    return freeze(out)
