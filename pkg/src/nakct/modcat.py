"""Combinatorial model of the d𝐙-cluster-tilting subcategory ``M`` of a d-Nakayama algebra.

Indecomposables of ``M`` are ``M(x)`` for ``x ∈ os^{d+1}``; over a cyclic
series ``x`` is the σ-orbit representative with ``x_1 ∈ [1, m]``.  Stable
operators return ``None`` for the zero module.
"""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import ordseq
from .kupisch import KupischSeries
from .ordseq import OrdSeq, precedes, shift

ModIdx = Tuple[int, ...]


class IsProjective(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class ModCat:
    """The category ``M`` for a fixed Kupisch series and ``d``."""

    def __init__(self, series: KupischSeries, d: int):
        if d < 1:
            raise ValueError("d must be positive")
        self.series = series
        self.d = d
        self.cyclic = series.cyclic
        self.m = series.width
        self._f: Dict[int, Optional[int]] = {}
        self._g: Dict[int, Optional[int]] = {}
        self._ext_cache: Dict[Tuple[ModIdx, ModIdx, int], int] = {}

    def __repr__(self) -> str:
        return f"ModCat({self.series}, d={self.d})"

    # -- index plumbing -----------------------------------------------------

    def f(self, i: int) -> Optional[int]:
        if i not in self._f:
            self._f[i] = ordseq.f_map(i, self.series, self.d)
        return self._f[i]

    def g(self, i: int) -> Optional[int]:
        if i not in self._g:
            self._g[i] = ordseq.g_map(i, self.series, self.d)
        return self._g[i]

    def canon(self, x: Sequence[int]) -> ModIdx:
        x = tuple(x)
        if self.cyclic:
            return ordseq.canonicalize(x, self.series)[0]
        return x

    def modules(self) -> Tuple[ModIdx, ...]:
        return ordseq.enumerate_os(self.series, self.d + 1)

    def vertices(self) -> Tuple[OrdSeq, ...]:
        return ordseq.enumerate_os(self.series, self.d)

    def is_module(self, x: Sequence[int]) -> bool:
        return ordseq.member(tuple(x), self.series, self.d + 1)

    # -- predicates ---------------------------------------------------------

    def is_projective(self, x: ModIdx) -> bool:
        return x[0] == self.f(x[-1])

    def is_injective(self, x: ModIdx) -> bool:
        return x[-1] == self.g(x[0])

    def is_simple(self, x: ModIdx) -> bool:
        return all(b == a + 1 for a, b in zip(x, x[1:]))

    def projectives(self) -> List[ModIdx]:
        return [x for x in self.modules() if self.is_projective(x)]

    def injectives(self) -> List[ModIdx]:
        return [x for x in self.modules() if self.is_injective(x)]

    # -- supports and Hom ---------------------------------------------------

    def support(self, x: ModIdx) -> Counter:
        """Vertices ``z`` with ``(x_1..x_d) ≼ z ≼ (x_2-1, ..., x_{d+1}-1)``, with multiplicity."""
        d = self.d
        lo = x[:d]
        hi = tuple(a - 1 for a in x[1:])
        out: Counter = Counter()
        ranges = [range(lo[i], hi[i] + 1) for i in range(d)]

        def rec(i: int, acc: Tuple[int, ...]):
            if i == d:
                z = acc
                if precedes(lo, z) and precedes(z, hi) and ordseq.member(z, self.series, d):
                    out[self.canon(z)] += 1
                return
            for v in ranges[i]:
                if acc and v <= acc[-1]:
                    continue
                rec(i + 1, acc + (v,))

        rec(0, ())
        return out

    def dim(self, x: ModIdx) -> int:
        return sum(self.support(x).values())

    def hom_basis(self, x: ModIdx, y: ModIdx) -> List[int]:
        """Shifts ``j`` with ``x ≼ σ^j(y)``; acyclic gives ``[0]`` or ``[]``."""
        if not self.cyclic:
            return [0] if precedes(x, y) else []
        m = self.m
        # x_1 <= y_1 + jm < x_2 bounds j
        lo = _ceil_div(x[0] - y[0], m)
        hi = (x[1] - 1 - y[0]) // m
        return [j for j in range(lo, hi + 1) if precedes(x, shift(y, j, m))]

    def hom_dim(self, x: ModIdx, y: ModIdx) -> int:
        return len(self.hom_basis(x, y))

    # -- stable operators ---------------------------------------------------

    def syzygy_d(self, x: Optional[ModIdx]) -> Optional[ModIdx]:
        if x is None or self.is_projective(x):
            return None
        return self.canon((self.f(x[-1]),) + tuple(x[:-1]))

    def cosyzygy_d(self, x: Optional[ModIdx]) -> Optional[ModIdx]:
        if x is None or self.is_injective(x):
            return None
        return self.canon(tuple(x[1:]) + (self.g(x[0]),))

    def tau_d(self, x: Optional[ModIdx]) -> Optional[ModIdx]:
        if x is None or self.is_projective(x):
            return None
        return self.canon(tuple(a - 1 for a in x))

    def tau_d_inv(self, x: Optional[ModIdx]) -> Optional[ModIdx]:
        if x is None or self.is_injective(x):
            return None
        return self.canon(tuple(a + 1 for a in x))

    def syzygy_power(self, x: Optional[ModIdx], k: int) -> Optional[ModIdx]:
        for _ in range(k):
            x = self.syzygy_d(x)
        return x

    def cosyzygy_power(self, x: Optional[ModIdx], k: int) -> Optional[ModIdx]:
        for _ in range(k):
            x = self.cosyzygy_d(x)
        return x

    def tau_nd(self, x: Optional[ModIdx], n: int) -> Optional[ModIdx]:
        """``τ_{nd} = τ_d Ω^{(n-1)d}``."""
        return self.tau_d(self.syzygy_power(x, n - 1))

    def tau_nd_inv(self, x: Optional[ModIdx], n: int) -> Optional[ModIdx]:
        return self.tau_d_inv(self.cosyzygy_power(x, n - 1))

    # -- resolutions and Ext ------------------------------------------------

    def proj_resolution(self, x: ModIdx) -> Tuple[List[ModIdx], Optional[ModIdx]]:
        """Terms ``P^1..P^d`` of the projective resolution of ``M(x)`` and ``Ω^d M(x)``.

        ``P^i = M(f(x_{d+1}), x_1, ..., x̂_i, ..., x_{d+1})``; invalid indices are
        zero terms and are dropped.
        """
        if self.is_projective(x):
            raise IsProjective(f"M{x} is projective")
        f = self.f(x[-1])
        terms = []
        for i in range(self.d):
            y = (f,) + tuple(x[:i]) + tuple(x[i + 1:])
            if self.is_module(y):
                terms.append(self.canon(y))
        return terms, self.syzygy_d(x)

    def ext_kd_dim(self, y: ModIdx, x: ModIdx, k: int) -> int:
        """``dim Ext^{kd}(M(y), M(x))``.

        Reduces to ``Ext^d(M(z), -)`` with ``z = Ω^{(k-1)d} y``.  A shift
        ``σ^j x`` contributes when ``σ^j x ≼ τ_d(z)`` and its first entry is
        at least ``f(z_{d+1})``: these are the maps ``Ω^d M(z) -> M(σ^j x)``
        that do not extend over the last projective term.
        """
        key = (y, x, k)
        if key in self._ext_cache:
            return self._ext_cache[key]
        z = self.syzygy_power(y, k - 1)
        if z is None or self.is_projective(z):
            val = 0
        else:
            t = tuple(a - 1 for a in z)
            low = self.f(z[-1])
            if not self.cyclic:
                val = 1 if precedes(x, t) and x[0] >= low else 0
            else:
                m = self.m
                # σ^j x ≼ t needs x_1 + jm <= t_1 < x_2 + jm
                lo = _ceil_div(t[0] - x[1] + 1, m)
                hi = (t[0] - x[0]) // m
                val = 0
                for j in range(lo, hi + 1):
                    sx = shift(x, j, m)
                    if precedes(sx, t) and sx[0] >= low:
                        val += 1
        self._ext_cache[key] = val
        return val

    # -- AR quiver ----------------------------------------------------------

    def ar_quiver(self) -> Tuple[List[ModIdx], List[Tuple[ModIdx, ModIdx, int]]]:
        """Nodes and arrow morphisms ``(x, y, j)`` meaning ``M(x) -> M(σ^j y)``."""
        nodes = list(self.modules())
        homs = {(x, y): self.hom_basis(x, y) for x in nodes for y in nodes}
        edges = []
        m = self.m
        for x in nodes:
            for y in nodes:
                for j in homs[(x, y)]:
                    target = shift(y, j, m) if self.cyclic else y
                    if target == x:
                        continue
                    if not self._factors(x, y, j, nodes, homs):
                        edges.append((x, y, j))
        return nodes, edges

    def _factors(self, x, y, j, nodes, homs) -> bool:
        m = self.m
        target = shift(y, j, m) if self.cyclic else y
        for z in nodes:
            for a in homs[(x, z)]:
                mid = shift(z, a, m) if self.cyclic else z
                if mid == x or mid == target:
                    continue
                if (j - a) in homs[(z, y)]:
                    return True
        return False


def gldim_formula(ell: int, m: int, d: int) -> int:
    """Global dimension of ``A^d_{ℓ,m}``."""
    step = ell + d - 1
    q = (m - 1) // step
    rest = m - 1 - q * step
    if rest == 0:
        return d * (d + 1) * q
    r = 1 if rest < ell else rest - ell + 2
    return d * ((d + 1) * q + r)


def label(x: Sequence[int]) -> str:
    return " ".join(str(a) for a in x)


def ar_to_dot(cat: ModCat, highlight: Optional[Sequence[ModIdx]] = None, color: str = "red") -> str:
    nodes, edges = cat.ar_quiver()
    marked = set(tuple(x) for x in highlight or ())
    lines = ["digraph AR {"]
    for x in nodes:
        attrs = [f'label="{label(x)}"']
        if x in marked:
            attrs.append(f'color="{color}"')
        lines.append(f'  "{label(x)}" [{", ".join(attrs)}];')
    for x, y, _ in edges:
        lines.append(f'  "{label(x)}" -> "{label(y)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def ar_to_json(cat: ModCat) -> dict:
    nodes, edges = cat.ar_quiver()
    return {
        "series": list(cat.series.entries),
        "cyclic": cat.cyclic,
        "d": cat.d,
        "nodes": [list(x) for x in nodes],
        "edges": [{"source": list(x), "target": list(y), "shift": j} for x, y, j in edges],
    }
