"""Kupisch series: validation, shapes, gluing and degluing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple


class KupischError(ValueError):
    pass


class GrowthViolation(KupischError):
    def __init__(self, i: int):
        super().__init__(f"growth rule violated at position {i}")
        self.i = i


class NotConnected(KupischError):
    pass


class EntryTooSmall(KupischError):
    pass


class CyclicInput(KupischError):
    pass


class NotDecomposable(KupischError):
    def __init__(self, witness: int, pattern: str):
        super().__init__(f"not piecewise homogeneous: pattern ({pattern}) at position {witness}")
        self.witness = witness
        self.pattern = pattern


class NoSelfDegluePoint(KupischError):
    pass


@dataclass(frozen=True)
class KupischSeries:
    entries: Tuple[int, ...]
    cyclic: bool = False

    @property
    def width(self) -> int:
        return len(self.entries)

    @property
    def ell(self) -> int:
        return max(self.entries)

    def at(self, i: int) -> int:
        """``ℓ_i`` with 1-based ``i``: zero outside ``[1, m]`` unless cyclic."""
        m = len(self.entries)
        if self.cyclic:
            return self.entries[(i - 1) % m]
        if 1 <= i <= m:
            return self.entries[i - 1]
        return 0

    def __str__(self) -> str:
        body = ",".join(str(x) for x in self.entries)
        return "~" + body if self.cyclic else body

    def to_json(self) -> dict:
        return {"series": list(self.entries), "cyclic": self.cyclic}


def parse(text: str) -> KupischSeries:
    """Parse ``"1,2,3"`` or ``"~5,5,5"``."""
    text = text.strip()
    cyclic = text.startswith("~")
    body = text[1:] if cyclic else text
    try:
        entries = [int(t) for t in body.split(",") if t.strip()]
    except ValueError as exc:
        raise KupischError(f"cannot parse series {text!r}") from exc
    if not entries:
        raise KupischError("empty series")
    return validate(entries, cyclic)


def canonical_rotation(entries: Sequence[int]) -> Tuple[int, ...]:
    entries = tuple(entries)
    return min(entries[r:] + entries[:r] for r in range(len(entries)))


def validate(entries: Sequence[int], cyclic: bool = False) -> KupischSeries:
    entries = tuple(int(x) for x in entries)
    m = len(entries)
    if m == 0:
        raise KupischError("empty series")
    if cyclic:
        for i, x in enumerate(entries, 1):
            if x < 2:
                raise EntryTooSmall(f"cyclic entry ℓ_{i} = {x} < 2")
        for i in range(m):
            if entries[i] > entries[i - 1] + 1:
                raise GrowthViolation(i + 1)
        return KupischSeries(canonical_rotation(entries), True)
    if entries[0] != 1:
        raise NotConnected(f"ℓ_1 = {entries[0]} but acyclic series start with 1")
    for i in range(1, m):
        if entries[i] < 2:
            raise NotConnected(f"ℓ_{i + 1} = {entries[i]} disconnects the quiver")
        if entries[i] > entries[i - 1] + 1:
            raise GrowthViolation(i + 1)
    return KupischSeries(entries, False)


def homogeneous(ell: int, m: int) -> KupischSeries:
    """The acyclic homogeneous series of ``A_{ℓ,m}``."""
    if ell > m:
        raise KupischError("homogeneous series needs m >= ℓ")
    return KupischSeries(tuple(min(i, ell) for i in range(1, m + 1)), False)


def cyclic_homogeneous(ell: int, m: int) -> KupischSeries:
    return validate([ell] * m, True)


def is_homogeneous(s: KupischSeries) -> bool:
    if s.cyclic:
        return len(set(s.entries)) == 1
    ell = s.ell
    return all(x == min(i, ell) for i, x in enumerate(s.entries, 1))


# ---------------------------------------------------------------------------
# gluing


def glue(a: KupischSeries, b: KupischSeries) -> KupischSeries:
    if a.cyclic or b.cyclic:
        raise CyclicInput("gluing needs acyclic series")
    return validate(a.entries + b.entries[1:], False)


def glue_all(pieces: Sequence[KupischSeries]) -> KupischSeries:
    out = pieces[0]
    for p in pieces[1:]:
        out = glue(out, p)
    return out


def self_glue(s: KupischSeries) -> KupischSeries:
    """``(1, 2, ..., ℓ_m) -> (ℓ_m, 2, ..., ℓ_{m-1})`` as a cyclic series."""
    if s.cyclic:
        raise CyclicInput("self-gluing needs an acyclic series")
    if s.width < 2:
        raise KupischError("self-gluing needs width at least 2")
    e = s.entries
    return validate((e[-1],) + e[1:-1], True)


@dataclass(frozen=True)
class SelfDegluing:
    """A self-degluing: the acyclic series and the rotation it was read from.

    Index ``i`` of ``series`` corresponds to cover index ``i + offset`` of the
    canonical cyclic series.
    """

    series: KupischSeries
    offset: int


def self_deglue_all(c: KupischSeries) -> List[SelfDegluing]:
    """All self-degluings, one per rotation of the form ``(ℓ_n, 2, ...)`` with ``ℓ_n ≠ 2``."""
    if not c.cyclic:
        raise KupischError("self-degluing needs a cyclic series")
    e = c.entries
    w = len(e)
    out = []
    for r in range(w):
        rho = e[r:] + e[:r]
        if rho[0] != 2 and rho[1 % w] == 2 and w > 1:
            out.append(SelfDegluing(validate((1,) + rho[1:] + (rho[0],), False), r))
    return out


def self_deglue(c: KupischSeries) -> KupischSeries:
    return self_deglue_point(c).series


def self_deglue_point(c: KupischSeries) -> SelfDegluing:
    found = self_deglue_all(c)
    if not found:
        raise NoSelfDegluePoint(f"{c} has no rotation (ℓ_n, 2, ...) with ℓ_n ≠ 2")
    return found[0]


# ---------------------------------------------------------------------------
# shapes


def find_obstruction(s: KupischSeries) -> Optional[Tuple[int, str]]:
    """First window start ``j`` matching an obstruction pattern.

    (a) ``2 < ℓ_j = ℓ_{j+1} < ℓ_{j+2}``; (b) ``ℓ_j > ℓ_{j+1} > 2``.
    Cyclic series are scanned with indices mod ``m``.
    """
    m = s.width
    for j in range(1, m + 1):
        a0, a1, a2 = s.at(j), s.at(j + 1), s.at(j + 2)
        in_range_a = s.cyclic or j + 2 <= m
        in_range_b = s.cyclic or j + 1 <= m
        if in_range_a and 2 < a0 == a1 < a2:
            return j, "a"
        if in_range_b and a0 > a1 > 2:
            return j, "b"
    return None


def _blocks(values: Sequence[int]) -> List[Tuple[int, ...]]:
    """Split the entries after the leading 1 into glued-piece tails.

    A new piece starts at a 2 that follows a larger entry, or at the last 2
    before a rise.
    """
    out: List[List[int]] = []
    n = len(values)
    for p, x in enumerate(values):
        start = p == 0
        if x == 2 and p > 0:
            prev = values[p - 1]
            nxt = values[p + 1] if p + 1 < n else None
            if prev > 2:
                start = True
            elif prev == 2 and nxt is not None and nxt > 2:
                start = True
        if start:
            out.append([x])
        else:
            out[-1].append(x)
    return [tuple(b) for b in out]


def _refine(pieces: List[KupischSeries], n: Optional[int]) -> List[KupischSeries]:
    if n is None:
        return pieces
    out = []
    for p in pieces:
        k = p.width - 1
        if p.ell == 2 and k > n and k % n == 0:
            out.extend([homogeneous(2, n + 1)] * (k // n))
        else:
            out.append(p)
    return out


def bridges(pieces: Sequence[KupischSeries], d: int, wrap: bool = False) -> List[Tuple[int, ...]]:
    """Bridge simples ``S_i = (1 + Σ m_k, ..., d + 1 + Σ m_k)`` between consecutive pieces."""
    out = []
    total = 0
    count = len(pieces) if wrap else len(pieces) - 1
    for i in range(count):
        total += pieces[i].width - 1
        out.append(tuple(1 + total + j for j in range(d + 1)))
    return out


def deglue_all(s: KupischSeries, d: int, n: Optional[int] = None) -> Tuple[List[KupischSeries], List[Tuple[int, ...]]]:
    """Decompose an acyclic series into homogeneous pieces and bridges.

    With ``n`` given, runs of 2 whose length is a multiple of ``n`` are cut
    every ``n`` steps.
    """
    if s.cyclic:
        raise CyclicInput("deglue_all needs an acyclic series")
    obs = find_obstruction(s)
    if obs is not None:
        raise NotDecomposable(*obs)
    if s.width == 1:
        return [s], []
    pieces = [validate((1,) + b, False) for b in _blocks(s.entries[1:])]
    for p in pieces:
        if not is_homogeneous(p):  # pragma: no cover - excluded by the obstruction scan
            raise KupischError(f"piece {p} is not homogeneous")
    pieces = _refine(pieces, n)
    return pieces, bridges(pieces, d)


@dataclass(frozen=True)
class SeriesShape:
    tag: str
    ell: Optional[int] = None
    m: Optional[int] = None
    pieces: Tuple[KupischSeries, ...] = ()
    witness: Optional[int] = None
    pattern: Optional[str] = None
    degluing: Optional[SelfDegluing] = None

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.ell is not None:
            out["ell"] = self.ell
            out["m"] = self.m
        if self.pieces:
            out["pieces"] = [list(p.entries) for p in self.pieces]
        if self.witness is not None:
            out["witness"] = self.witness
            out["pattern"] = self.pattern
        if self.degluing is not None:
            out["self_deglued"] = list(self.degluing.series.entries)
            out["rotation"] = self.degluing.offset
        return out


def classify_shape(s: KupischSeries) -> SeriesShape:
    obs = find_obstruction(s)
    if obs is not None:
        return SeriesShape("Obstructed", witness=obs[0], pattern=obs[1])
    if is_homogeneous(s):
        tag = "CyclicHomogeneous" if s.cyclic else "AcyclicHomogeneous"
        return SeriesShape(tag, ell=s.ell, m=s.width)
    if s.cyclic:
        point = self_deglue_point(s)
        pieces, _ = deglue_all(point.series, 1)
        return SeriesShape("CyclicDecomposable", pieces=tuple(pieces), degluing=point)
    pieces, _ = deglue_all(s, 1)
    return SeriesShape("AcyclicDecomposable", pieces=tuple(pieces))
