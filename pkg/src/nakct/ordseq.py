"""Ordered sequences ``os^k``, the relation ≼, the maps f and g, and σ-shifts."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .kupisch import KupischSeries

OrdSeq = Tuple[int, ...]


class LengthMismatch(ValueError):
    pass


class AcyclicContext(ValueError):
    pass


def is_increasing(x: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(x, x[1:]))


def member(x: Sequence[int], s: KupischSeries, k: Optional[int] = None) -> bool:
    """``x ∈ os^k``: strictly increasing and ``x_k - x_1 + 1 <= ℓ_{x_k-k+1} + k - 1``."""
    k = len(x) if k is None else k
    if len(x) != k or k == 0 or not is_increasing(x):
        return False
    ell = s.at(x[-1] - k + 1)
    if ell == 0:
        return False
    return x[-1] - x[0] + 1 <= ell + k - 1


@lru_cache(maxsize=None)
def enumerate_os(s: KupischSeries, k: int) -> Tuple[OrdSeq, ...]:
    """All of ``os^k`` (acyclic) or one representative per σ-orbit with ``x_1 ∈ [1, m]``."""
    m = s.width
    out: List[OrdSeq] = []
    if s.cyclic:
        firsts = range(1, m + 1)
    else:
        firsts = range(1, m + 1)
    span = s.ell + k - 1
    for a in firsts:
        if k == 1:
            if member((a,), s, 1):
                out.append((a,))
            continue
        for last in range(a + k - 1, a + span):
            for mid in combinations(range(a + 1, last), k - 2):
                x = (a,) + mid + (last,)
                if member(x, s, k):
                    out.append(x)
    out.sort()
    return tuple(out)


def precedes(x: Sequence[int], y: Sequence[int]) -> bool:
    """``x ≼ y``: ``x_1 <= y_1 < x_2 <= y_2 < ... < x_k <= y_k``."""
    if len(x) != len(y):
        raise LengthMismatch(f"{tuple(x)} and {tuple(y)} differ in length")
    k = len(x)
    for i in range(k):
        if x[i] > y[i]:
            return False
        if i + 1 < k and y[i] >= x[i + 1]:
            return False
    return True


def f_map(i: int, s: KupischSeries, d: int) -> Optional[int]:
    """``min{x : (x, ..., i) ∈ os^{d+1}}``."""
    ell = s.at(i - d)
    if ell == 0:
        return None
    val = i - ell - d + 1
    return val if s.cyclic else max(val, 1)


def g_map(i: int, s: KupischSeries, d: int) -> Optional[int]:
    """``max{y : (i, ..., y) ∈ os^{d+1}}``."""
    y = i + d
    best = None
    while True:
        fy = f_map(y, s, d)
        if fy is None or fy > i:
            return best
        best = y
        y += 1


def shift(x: Sequence[int], j: int, m: int) -> OrdSeq:
    """``σ^j(x) = x + j(m, ..., m)``."""
    return tuple(a + j * m for a in x)


def canonicalize(x: Sequence[int], s: KupischSeries) -> Tuple[OrdSeq, int]:
    """Representative with ``x_1 ∈ [1, m]`` and ``j`` with ``x = σ^j(rep)``."""
    if not s.cyclic:
        raise AcyclicContext("canonicalize needs a cyclic series")
    m = s.width
    j = (x[0] - 1) // m
    return shift(x, -j, m), j
