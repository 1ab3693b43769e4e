"""Ordered alternating partitions: exact counts, closed forms and the alt map.

``AQ_N(l, d)`` counts strictly decreasing tuples ``N-1 >= l_1 > ... > l_d >= 0``
whose alternating sum ``l_1 - l_2 + l_3 - ...`` equals ``l``; ``AP_N(l, d)`` is
the same count for weakly decreasing tuples.  All counts are Python ints.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, Sequence


def binom(a: int, b: int) -> int:
    """Binomial coefficient with ``binom(a, b) = 0`` for negative ``a`` or ``b``."""
    if a < 0 or b < 0:
        return 0
    return math.comb(a, b)


def alternating_sum(parts: Sequence[int]) -> int:
    return sum(p if i % 2 == 0 else -p for i, p in enumerate(parts))


def _check_distinct(N: int, l: int, d: int) -> None:
    if N < 1:
        raise ValueError("N must be positive")
    if not 1 <= d <= N:
        raise ValueError(f"d={d} must satisfy 1 <= d <= N={N}")
    if not 0 <= l <= N - 1:
        raise ValueError(f"l={l} must lie in 0..{N - 1}")


def _check_nondistinct(N: int, l: int, d: int) -> None:
    if N < 1:
        raise ValueError("N must be positive")
    if d < 1:
        raise ValueError("d must be at least 1")
    if not 0 <= l <= N - 1:
        raise ValueError(f"l={l} must lie in 0..{N - 1}")


@lru_cache(maxsize=None)
def _aq_histogram(N: int, d: int) -> Counter:
    # combinations of a descending range come out strictly decreasing
    return Counter(alternating_sum(t) for t in itertools.combinations(range(N - 1, -1, -1), d))


@lru_cache(maxsize=None)
def _ap_histogram(N: int, d: int) -> Counter:
    return Counter(
        alternating_sum(t)
        for t in itertools.combinations_with_replacement(range(N - 1, -1, -1), d)
    )


def aq_brute(N: int, l: int, d: int) -> int:
    """Count distinct-part alternating partitions by enumeration."""
    _check_distinct(N, l, d)
    return _aq_histogram(N, d)[l]


def aq_closed(N: int, l: int, d: int) -> int:
    """Closed form for ``AQ_N(l, d)`` as a product of two binomials."""
    _check_distinct(N, l, d)
    lo, hi = (d - 1) // 2, d // 2
    if d % 2 == 0:
        return binom(l - 1, lo) * binom(N - l, hi)
    return binom(l, lo) * binom(N - l - 1, hi)


@lru_cache(maxsize=None)
def aq_hat(N: int, l: int, d: int) -> int:
    """Count tuples ``N >= l_1 > ... > l_d >= 1`` with alternating sum ``l``.

    ``d = 0`` is allowed (the empty tuple has sum 0), which makes the
    recursion in ``N`` close on itself.
    """
    if N < 0 or d < 0 or l < 0:
        raise ValueError("N, l and d must be non-negative")
    return sum(
        1
        for t in itertools.combinations(range(N, 0, -1), d)
        if alternating_sum(t) == l
    )


def ap_brute(N: int, l: int, d: int) -> int:
    """Count non-distinct-part alternating partitions by enumeration."""
    _check_nondistinct(N, l, d)
    return _ap_histogram(N, d)[l]


def parity(k: int) -> int:
    return k % 2


def odd_count(k: Sequence[int]) -> int:
    return sum(1 for kj in k if kj % 2)


def alt(k: Sequence[int]) -> int:
    """Alternating sum of the weakly decreasing tuple with multiplicities ``k``.

    Index ``j`` appears ``k[j]`` times; the tuple is read from the largest
    index down with one global sign that flips after every part.  A block of
    even length cancels and leaves the sign unchanged.
    """
    total, sign = 0, 1
    for j in range(len(k) - 1, -1, -1):
        if k[j] % 2:
            total += sign * j
            sign = -sign
    return total


def compositions(d: int, N: int) -> Iterator[tuple[int, ...]]:
    """All ``k`` in ``N`` non-negative parts with ``sum(k) == d`` (stars and bars)."""
    if N < 1 or d < 0:
        return
    for bars in itertools.combinations(range(d + N - 1), N - 1):
        prev = -1
        k = []
        for b in bars:
            k.append(b - prev - 1)
            prev = b
        k.append(d + N - 2 - prev)
        yield tuple(k)


def ap_via_alt(N: int, l: int, d: int) -> int:
    """Count multiplicity vectors ``k`` with ``|k|_1 = d`` and ``alt(k) = l``."""
    _check_nondistinct(N, l, d)
    return sum(1 for k in compositions(d, N) if alt(k) == l)


@dataclass(frozen=True)
class MultiIndex:
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(kj < 0 for kj in self.k):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "k", tuple(int(kj) for kj in self.k))

    @property
    def norm(self) -> int:
        return sum(self.k)

    @property
    def odd(self) -> int:
        return odd_count(self.k)

    @property
    def alt(self) -> int:
        return alt(self.k)

    def expanded(self) -> tuple[int, ...]:
        """The weakly decreasing tuple these multiplicities encode."""
        return tuple(j for j in range(len(self.k) - 1, -1, -1) for _ in range(self.k[j]))


Kind = Literal["distinct", "non-distinct"]


@dataclass(frozen=True)
class PartitionTable:
    N: int
    d: int
    counts: tuple[int, ...]
    kind: Kind

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def expected_total(self) -> int:
        if self.kind == "distinct":
            return math.comb(self.N, self.d)
        return math.comb(self.N + self.d - 1, self.d)


def aq_table(N: int, d: int, method: str = "closed") -> PartitionTable:
    fn = {"closed": aq_closed, "brute": aq_brute}[method]
    return PartitionTable(N, d, tuple(fn(N, l, d) for l in range(N)), "distinct")


def ap_table(N: int, d: int, method: str = "brute") -> PartitionTable:
    fn = {"brute": ap_brute, "alt": ap_via_alt}[method]
    return PartitionTable(N, d, tuple(fn(N, l, d) for l in range(N)), "non-distinct")
