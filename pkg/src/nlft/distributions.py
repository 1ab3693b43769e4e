"""Beta densities, polytope volumes and the discrete beta distribution.

Shapes use the standard convention: ``Beta(alpha, beta)`` has density
proportional to ``x**(alpha-1) * (1-x)**(beta-1)``.  The discrete family is
parametrized by non-negative integers ``(a, b)`` and approximates
``Beta(a + 1, b + 1)``; :meth:`BetaShape.from_integer_params` is the bridge.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .partitions import aq_closed, binom

_EXACT_FACTORIAL_LIMIT = 20


def _is_small_int(x: float) -> bool:
    return float(x).is_integer() and 0 < x <= _EXACT_FACTORIAL_LIMIT


def beta_fn(a: float, b: float) -> float:
    """Euler beta function ``B(a, b)``."""
    if a <= 0 or b <= 0:
        raise ValueError("beta_fn needs positive arguments")
    if _is_small_int(a) and _is_small_int(b):
        a, b = int(a), int(b)
        return math.factorial(a - 1) * math.factorial(b - 1) / math.factorial(a + b - 1)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


@dataclass(frozen=True)
class BetaShape:
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("beta shape parameters must be positive")

    @classmethod
    def from_integer_params(cls, a: int, b: int) -> "BetaShape":
        """Shape whose density is ``x**a (1-x)**b / B(a+1, b+1)``."""
        return cls(a + 1, b + 1)


def beta_pdf(x: float, shape: BetaShape) -> float:
    """Beta density with the convention ``0**0 = 1``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    p, q = shape.alpha - 1, shape.beta - 1
    try:
        num = x**p * (1 - x) ** q
    except ZeroDivisionError:
        return math.inf
    return num / beta_fn(shape.alpha, shape.beta)


def volume_shape(d: int) -> BetaShape:
    """Beta shape that governs ``Vol(D_d(l))``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if d % 2 == 0:
        return BetaShape(d / 2, d / 2 + 1)
    return BetaShape((d + 1) / 2, (d + 1) / 2)


def vol_formula(d: int, l: float) -> float:
    """Volume of the projected slice ``D_d(l)`` of the ordered unit simplex."""
    return beta_pdf(l, volume_shape(d)) / math.factorial(d)


class VolumeEstimate(NamedTuple):
    estimate: float
    stderr: float
    count: int
    samples: int
    seed: int


_MC_CHUNK = 250_000


def vol_mc(
    d: int, bin_center: float, bin_width: float, samples: int, seed: int
) -> VolumeEstimate:
    """Monte Carlo estimate of ``Vol(D_d(l))`` at ``l = bin_center``.

    Points are drawn uniformly on the ordered simplex (sorted uniforms) and
    the alternating coordinate sum is histogrammed into the bin
    ``[center - width/2, center + width/2)``.  The uniform law on the simplex
    has density ``d!``, so the histogram density divided by ``d!`` estimates
    the volume.  The budget is split into fixed-size chunks, each drawn from
    its own Philox stream spawned from ``seed``.
    """
    if d < 2:
        raise ValueError("d = 1 is degenerate: the alternating sum is x_1 itself")
    if samples < 10_000:
        raise ValueError("use at least 10**4 samples")
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    lo, hi = bin_center - bin_width / 2, bin_center + bin_width / 2
    n_chunks = -(-samples // _MC_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    signs = np.where(np.arange(d) % 2 == 0, 1.0, -1.0)
    count = 0
    remaining = samples
    for ss in streams:
        m = min(_MC_CHUNK, remaining)
        remaining -= m
        rng = np.random.Generator(np.random.Philox(ss))
        x = -np.sort(-rng.random((m, d)), axis=1)
        s = x @ signs
        count += int(np.count_nonzero((s >= lo) & (s < hi)))
    if count == 0:
        warnings.warn(f"empty bin around l={bin_center}", RuntimeWarning, stacklevel=2)
    p = count / samples
    scale = bin_width * math.factorial(d)
    return VolumeEstimate(p / scale, math.sqrt(p * (1 - p) / samples) / scale, count, samples, seed)


def _check_discrete(N: int, a: int, b: int) -> None:
    if a < 0 or b < 0 or int(a) != a or int(b) != b:
        raise ValueError("a and b must be non-negative integers")
    if N <= a + b:
        raise ValueError(f"need N > a + b (N={N}, a={a}, b={b})")


def _q_int(N: int, a: int, b: int, l: int) -> int:
    return binom(l - 1, a) * binom(N - l, b)


def q_unnormalized(N: int, a: int, b: int, l: int) -> float:
    """Unnormalized discrete beta value ``Q_N(l / N; a, b)``."""
    return float(Fraction(math.factorial(a + b + 1) * _q_int(N, a, b, l), N ** (a + b)))


def _c_norm_exact(N: int, a: int, b: int) -> Fraction:
    _check_discrete(N, a, b)
    mass = sum(_q_int(N, a, b, l) for l in range(N))
    if mass == 0:
        raise ValueError("discrete beta has zero total mass")
    # c^{-1} = (1/N) sum_l (a+b+1)! / N^(a+b) * binomials
    return Fraction(N ** (a + b + 1), math.factorial(a + b + 1) * mass)


def c_norm(N: int, a: int, b: int) -> float:
    """Normalizing constant ``c(N)`` of the discrete beta distribution."""
    return float(_c_norm_exact(N, a, b))


@dataclass(frozen=True)
class DiscreteBetaSpec:
    N: int
    a: int
    b: int

    def __post_init__(self) -> None:
        _check_discrete(self.N, self.a, self.b)

    @cached_property
    def c_N(self) -> float:
        return c_norm(self.N, self.a, self.b)

    @property
    def shape(self) -> BetaShape:
        return BetaShape.from_integer_params(self.a, self.b)


def discrete_beta_pmf(spec: DiscreteBetaSpec, l: int) -> float:
    """Density value ``P_N(l / N; a, b)``; the point mass at ``l`` is this over ``N``."""
    if not 0 <= l < spec.N:
        raise IndexError(f"l={l} outside 0..{spec.N - 1}")
    exact = _c_norm_exact(spec.N, spec.a, spec.b) * math.factorial(spec.a + spec.b + 1)
    return float(exact * _q_int(spec.N, spec.a, spec.b, l) / Fraction(spec.N) ** (spec.a + spec.b))


def nearest_index(lam: float, N: int) -> int:
    return min(max(round(lam * N), 0), N - 1)


class ConvergenceRow(NamedTuple):
    N: int
    l_N: int
    P_N: float
    p_beta: float
    abs_err: float
    p_beta_limit: float
    c_N: float


def convergence_table(a: int, b: int, lam: float, N_list: Sequence[int]) -> list[ConvergenceRow]:
    """Discrete pmf at ``l_N = round(lam N)`` against the beta density.

    ``p_beta`` is the density at the grid point ``l_N / N`` and ``abs_err``
    is measured against it; ``p_beta_limit`` is the density at ``lam``.
    """
    shape = BetaShape.from_integer_params(a, b)
    rows = []
    for N in N_list:
        spec = DiscreteBetaSpec(N, a, b)
        l_N = nearest_index(lam, N)
        P = discrete_beta_pmf(spec, l_N)
        target = beta_pdf(l_N / N, shape)
        rows.append(ConvergenceRow(N, l_N, P, target, abs(P - target), beta_pdf(lam, shape), spec.c_N))
    return rows


class LimitRow(NamedTuple):
    N: int
    l_N: int
    scaled_aq: float
    p_beta_target: float
    abs_err: float
    vol_scaled: float
    vol_target: float


def aq_beta_limit_check(d: int, lam: float, N_list: Sequence[int]) -> list[LimitRow]:
    """``d! AQ_N(l_N, d) / N**(d-1)`` against the beta density at ``lam``.

    Also reports ``AQ_N / N**(d-1)`` next to ``Vol(D_d(lam))``.
    """
    target = beta_pdf(lam, volume_shape(d))
    vol = vol_formula(d, lam)
    rows = []
    for N in N_list:
        if N < d:
            raise ValueError(f"N={N} smaller than d={d}")
        l_N = nearest_index(lam, N)
        count = aq_closed(N, l_N, d)
        vol_scaled = float(Fraction(count, N ** (d - 1)))
        scaled = vol_scaled * math.factorial(d)
        rows.append(LimitRow(N, l_N, scaled, target, abs(scaled - target), vol_scaled, vol))
    return rows
