"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{index: value}`` with ``int`` or ``Fraction`` values and no
stored zeros.  Elimination keeps rows normalised so that the pivot entry is 1;
with the 0/+-1 structure constants met in practice the pivots are units and
every entry stays an ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

Vec = Dict[int, object]


def qdiv(a, b):
    """Exact quotient, kept as ``int`` when it divides evenly."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def axpy(y: Vec, a, x: Vec) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = _norm(w)
        else:
            y.pop(k, None)


def scale(x: Vec, a) -> Vec:
    if not a:
        return {}
    return {k: _norm(a * v) for k, v in x.items()}


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Every stored row has its pivot at its smallest index with value 1.  When
    ``track`` is used each row also carries the combination of inserted
    vectors that produced it.
    """

    def __init__(self) -> None:
        self.rows: Dict[int, Vec] = {}
        self.tags: Dict[int, Vec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec, tag: Optional[Vec] = None, full: bool = True) -> Tuple[Vec, Optional[Vec]]:
        """Reduce a copy of ``v`` against the stored rows.

        With ``full`` every pivot column is cleared; otherwise reduction stops
        at the first non-pivot leading index.
        """
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        if full:
            while True:
                hits = [k for k in v if k in rows]
                if not hits:
                    break
                p = min(hits)
                c = v[p]
                axpy(v, -c, rows[p])
                if tag is not None:
                    axpy(tag, -c, self.tags[p])
        else:
            while v:
                p = min(v)
                if p not in rows:
                    break
                c = v[p]
                axpy(v, -c, rows[p])
                if tag is not None:
                    axpy(tag, -c, self.tags[p])
        return v, tag

    def add(self, v: Vec, tag: Optional[Vec] = None) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        r, t = self.reduce(v, tag, full=False)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if c != 1:
            inv = qdiv(1, c)
            r = scale(r, inv)
            if t is not None:
                t = scale(t, inv)
        self.rows[p] = r
        if t is not None:
            self.tags[p] = t
        return True

    def contains(self, v: Vec) -> bool:
        r, _ = self.reduce(v, full=False)
        return not r


def rank(vectors: Iterable[Vec]) -> int:
    e = Echelon()
    n = 0
    for v in vectors:
        if e.add(v):
            n += 1
    return n


def kernel(columns: List[Vec]) -> List[Vec]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}``, returned in reduced form.

    The result is in reduced row echelon form with respect to the coordinate
    index ``j``: each basis vector has a distinct pivot with value 1 and the
    other vectors vanish there.
    """
    e = Echelon()
    raw: List[Vec] = []
    for j, col in enumerate(columns):
        r, t = e.reduce(col, {j: 1}, full=False)
        if not r:
            raw.append(t)
            continue
        p = min(r)
        c = r[p]
        if c != 1:
            inv = qdiv(1, c)
            r = scale(r, inv)
            t = scale(t, inv)
        e.rows[p] = r
        e.tags[p] = t
    return rref(raw)


def rref(vectors: List[Vec]) -> List[Vec]:
    """Reduced row echelon basis of the span, pivots at largest index."""
    # pivot on the largest index so that kernel vectors keep their own
    # free coordinate as pivot
    rows: Dict[int, Vec] = {}
    for v in vectors:
        v = dict(v)
        while v:
            hits = [k for k in v if k in rows]
            if not hits:
                break
            p = max(hits)
            axpy(v, -v[p], rows[p])
        if not v:
            continue
        p = max(v)
        c = v[p]
        if c != 1:
            v = scale(v, qdiv(1, c))
        for q, w in rows.items():
            if p in w:
                axpy(w, -w[p], v)
        rows[p] = v
    return [rows[p] for p in sorted(rows)]


def pivots(basis: List[Vec]) -> List[int]:
    """Pivot indices of a basis produced by :func:`rref`."""
    return [max(v) for v in basis]


def coords(v: Vec, basis: List[Vec], piv: List[int]) -> Vec:
    """Coordinates of ``v`` in an rref basis, assuming ``v`` lies in its span."""
    return {i: v[p] for i, p in enumerate(piv) if v.get(p)}


def apply(cols: List[Vec], v: Vec) -> Vec:
    """Apply a matrix given by its image columns to a vector."""
    out: Vec = {}
    for j, c in v.items():
        axpy(out, c, cols[j])
    return out


def compose(a: List[Vec], b: List[Vec]) -> List[Vec]:
    """Column form of ``a @ b``."""
    return [apply(a, col) for col in b]


def complement_units(span: Iterable[Vec], dim: int) -> List[int]:
    """Unit vectors completing ``span`` to the whole space ``Q^dim``."""
    e = Echelon()
    for v in span:
        e.add(v)
    return [i for i in range(dim) if i not in e.rows]
