"""Brute-force counting oracles.

Nothing here touches the series engine: counts come from explicit
enumeration or from direct integer dynamic programming over multiplicities,
so they can be used to check series expansions independently.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .errors import EvenInput

__all__ = [
    "NormCount",
    "OddGapFreePartition",
    "PartitionTable",
    "enumerate_gapfree_odd",
    "norm_form_count",
    "norm_form_solutions",
    "o_count",
    "o_star_count",
    "s_plus_t",
]


@dataclass(frozen=True)
class OddGapFreePartition:
    """Partition into odd parts 1, 3, ..., 2k-1, each present at least once.

    ``multiplicities[i]`` is the number of copies of part ``2i+1``.
    """

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if not self.multiplicities or any(m < 1 for m in self.multiplicities):
            raise ValueError("every odd part up to the largest must appear")

    @property
    def largest_part(self) -> int:
        return 2 * len(self.multiplicities) - 1

    @property
    def total(self) -> int:
        return sum((2 * i + 1) * m for i, m in enumerate(self.multiplicities))

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in nonincreasing order."""
        out = []
        for i in reversed(range(len(self.multiplicities))):
            out.extend([2 * i + 1] * self.multiplicities[i])
        return tuple(out)

    @property
    def weight(self) -> int:
        """-1 if the largest part is 1 mod 4, +1 if it is 3 mod 4."""
        return -1 if self.largest_part % 4 == 1 else 1

    @property
    def largest_has_odd_multiplicity(self) -> bool:
        return self.multiplicities[-1] % 2 == 1


def _extra_copies(remaining: int, k: int) -> Iterator[tuple[int, ...]]:
    # all (e_0..e_{k-1}) >= 0 with sum (2i+1) e_i == remaining
    if k == 1:
        yield (remaining,)
        return
    part = 2 * k - 1
    for e in range(remaining // part + 1):
        for rest in _extra_copies(remaining - e * part, k - 1):
            yield rest + (e,)


def enumerate_gapfree_odd(n: int) -> list[OddGapFreePartition]:
    """Every partition of ``n`` into odd parts with no gaps below the largest part."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    k = 1
    while k * k <= n:
        for extra in _extra_copies(n - k * k, k):
            out.append(OddGapFreePartition(tuple(e + 1 for e in extra)))
        k += 1
    return out


@functools.lru_cache(maxsize=8)
def _signed_counts(max_n: int, star: bool) -> tuple[int, ...]:
    """Weighted counts for all n <= max_n via multiplicity DP."""
    totals = [0] * (max_n + 1)
    k = 1
    while k * k <= max_n:
        top = max_n - k * k
        ways = [0] * (top + 1)
        ways[0] = 1
        for i in range(k - 1):
            part = 2 * i + 1
            for r in range(part, top + 1):
                ways[r] += ways[r - part]
        # extra copies of the largest part: any number, or an even number for star
        step = 2 * (2 * k - 1) if star else 2 * k - 1
        for r in range(step, top + 1):
            ways[r] += ways[r - step]
        sign = -1 if k % 2 else 1
        for r in range(top + 1):
            totals[k * k + r] += sign * ways[r]
        k += 1
    return tuple(totals)


def o_count(n: int, method: str = "count") -> int:
    """Signed count of gap-free odd partitions of ``n`` (0 for n = 0).

    ``method="enumerate"`` lists every partition explicitly; the default
    counts multiplicity vectors without listing them.
    """
    if n <= 0:
        return 0
    if method == "enumerate":
        return sum(p.weight for p in enumerate_gapfree_odd(n))
    return _signed_counts(n, False)[n]


def o_star_count(n: int, method: str = "count") -> int:
    """As :func:`o_count`, restricted to an odd number of copies of the largest part."""
    if n <= 0:
        return 0
    if method == "enumerate":
        return sum(p.weight for p in enumerate_gapfree_odd(n) if p.largest_has_odd_multiplicity)
    return _signed_counts(n, True)[n]


def s_plus_t(n: int) -> int:
    """Signed representations ``n = r^2 + k(k+1)/2`` (r any integer, k >= 0), weight ``(-1)^r``."""
    if n < 0:
        return 0
    total = 0
    bound = math.isqrt(n)
    for r in range(-bound, bound + 1):
        t = n - r * r
        # t is triangular iff 8t + 1 is an odd square
        d = 8 * t + 1
        s = math.isqrt(d)
        if s * s == d:
            total += -1 if r % 2 else 1
    return total


class NormCount(NamedTuple):
    count: int
    sign: Optional[int]


def norm_form_solutions(N: int) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``2x^2 - y^2 = N``, ``x > 0`` and ``-x < y <= x``.

    ``|y| <= x`` forces ``x^2 <= N``, so the search is finite.
    """
    if N % 2 == 0:
        raise EvenInput(f"N = {N} must be odd")
    sols = []
    for x in range(1, math.isqrt(max(N, 0)) + 1):
        y2 = 2 * x * x - N
        if y2 < 0:
            continue
        y = math.isqrt(y2)
        if y * y != y2:
            continue
        for cand in {y, -y}:
            if -x < cand <= x:
                sols.append((x, cand))
    return sorted(sols)


def norm_form_count(N: int) -> NormCount:
    """Fundamental-domain representation count of ``N`` by ``2x^2 - y^2``.

    The sign ``(-1)^((N+1)/8)`` is attached only when ``N = 7 mod 8``.
    """
    count = len(norm_form_solutions(N))
    sign = (-1) ** ((N + 1) // 8) if N % 8 == 7 else None
    return NormCount(count, sign)


@dataclass(frozen=True)
class PartitionTable:
    """Write-once table of the counting functions for ``0 <= n <= max_n``.

    ``norm[n]`` holds ``norm_form_count(8n - 1).count`` for ``n >= 1``.
    """

    max_n: int
    o: tuple[int, ...]
    o_star: tuple[int, ...]
    s_plus_t: tuple[int, ...]
    norm: tuple[int, ...]

    @classmethod
    def build(cls, max_n: int) -> "PartitionTable":
        o = _signed_counts(max_n, False) if max_n > 0 else (0,)
        o_star = _signed_counts(max_n, True) if max_n > 0 else (0,)
        spt = tuple(s_plus_t(n) for n in range(max_n + 1))
        norm = (0,) + tuple(norm_form_count(8 * n - 1).count for n in range(1, max_n + 1))
        return cls(max_n, tuple(o), tuple(o_star), spt, norm)

    def lookup(self, kind: str, n: int) -> int:
        if not 0 <= n <= self.max_n:
            raise IndexError(f"n = {n} outside table range 0..{self.max_n}")
        return getattr(self, kind.replace("-", "_"))[n]
