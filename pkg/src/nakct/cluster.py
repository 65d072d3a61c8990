"""Rigidity and cluster-tilting certification, subcategory gluing, search and classification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from . import finalg, kupisch
from .finalg import ExceedsBound, FinAlg
from .kupisch import KupischSeries
from .modcat import ModCat, ModIdx
from .oracle import CapExceeded, DEFAULT_CAP, env_cap
from .ordseq import precedes, shift

DEFAULT_SUBSET_CAP = 1 << 14


class BridgeMissing(ValueError):
    pass


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class ModuleSet:
    """A finite set of indices of ``ind M`` over a fixed series and ``d``."""

    series: KupischSeries
    d: int
    modules: Tuple[ModIdx, ...]

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(sorted(set(tuple(x) for x in self.modules))))

    @classmethod
    def of(cls, cat: ModCat, modules: Iterable[Sequence[int]]) -> "ModuleSet":
        mods = {cat.canon(tuple(x)) for x in modules}
        bad = [x for x in mods if not cat.is_module(x)]
        if bad:
            raise ValueError(f"not in os^{cat.d + 1}: {sorted(bad)}")
        return cls(cat.series, cat.d, tuple(mods))

    def __contains__(self, x) -> bool:
        return tuple(x) in set(self.modules)

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def to_json(self) -> dict:
        return {
            "series": list(self.series.entries),
            "cyclic": self.series.cyclic,
            "d": self.d,
            "modules": [list(x) for x in self.modules],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleSet":
        series = kupisch.validate(data["series"], bool(data.get("cyclic", False)))
        cat = ModCat(series, int(data["d"]))
        return cls.of(cat, data["modules"])


@dataclass
class Verdict:
    """Outcome of a check: ``failures`` holds ``(tag, witness)`` pairs."""

    failures: List[Tuple[str, tuple]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.failures

    def tags(self) -> List[str]:
        return [t for t, _ in self.failures]

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "failures": [{"tag": t, "witness": _jsonable(w)} for t, w in self.failures],
            "notes": list(self.notes),
        }


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(a) for a in w]
    return w


@dataclass
class Classification:
    """Theorem-level answer for one ``(series, d, n)``.

    ``status`` is ``"theorem"`` when the arithmetic conditions decide
    existence and ``"necessary_only"`` when only a necessary condition is
    known (then ``exists`` is None).
    """

    exists: Optional[bool]
    n: int
    n_values: List[int]
    subcategory: Optional[ModuleSet]
    reason: List[dict]
    status: str = "theorem"

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "status": self.status,
            "n": self.n,
            "n_values": list(self.n_values),
            "subcategory": self.subcategory.to_json() if self.subcategory is not None else None,
            "reason": self.reason,
        }


# ---------------------------------------------------------------------------
# checks


def rigidity(cat: ModCat, C: Iterable[ModIdx], n: int, exhaustive: bool = False) -> Verdict:
    """``Ext^{kd}(y, x) = 0`` for ``x, y ∈ C`` and ``1 <= k <= n-1``."""
    v = Verdict()
    mods = sorted(C)
    for k in range(1, n):
        for y in mods:
            for x in mods:
                if cat.ext_kd_dim(y, x, k):
                    v.failures.append(("RigidityFail", (k, y, x)))
                    if not exhaustive:
                        return v
    return v


def _generator_failures(cat: ModCat, cset: set) -> List[Tuple[str, tuple]]:
    out = []
    for p in cat.projectives():
        if p not in cset:
            out.append(("NotGenerator", p))
    for q in cat.injectives():
        if q not in cset:
            out.append(("NotCogenerator", q))
    return out


def check_partial(cat: ModCat, C: Iterable[ModIdx], n: int) -> Verdict:
    """Partial ``nd𝐙``-cluster-tilting conditions (a)-(e)."""
    cset = set(C)
    v = Verdict()
    v.failures.extend(_generator_failures(cat, cset))
    v.failures.extend(rigidity(cat, cset, n).failures)
    c_p = sorted(x for x in cset if not cat.is_projective(x))
    c_i = sorted(x for x in cset if not cat.is_injective(x))
    for y in c_i:
        x = cat.tau_nd_inv(y, n)
        if x is None or x not in cset or cat.is_projective(x) or cat.tau_nd(x, n) != y:
            v.failures.append(("TauBijectionFail", y))
    for x in c_p:
        y = cat.tau_nd(x, n)
        if y is None or y not in cset or cat.is_injective(y) or cat.tau_nd_inv(y, n) != x:
            v.failures.append(("TauBijectionFail", x))
    v.notes.append("condition (d) checked on d-step syzygies only; other degrees follow inside M")
    for x in c_p:
        z = x
        for k in range(1, n):
            z = cat.syzygy_d(z)
            if z is None or cat.is_projective(z):
                v.failures.append(("IntermediateSyzygyFail", (x, k)))
                break
    for y in c_i:
        z = y
        for k in range(1, n):
            z = cat.cosyzygy_d(z)
            if z is None or cat.is_injective(z):
                v.failures.append(("IntermediateCosyzygyFail", (y, k)))
                break
    for x in sorted(cset):
        for w in (cat.syzygy_power(x, n), cat.cosyzygy_power(x, n)):
            if w is not None and w not in cset:
                v.failures.append(("NotOmegaClosed", x))
                break
    return v


def end_algebra(cat: ModCat, C: Iterable[ModIdx]) -> FinAlg:
    """``End(⊕_{x∈C} M(x))`` with basis ``(x, y, j)`` for ``j ∈ hom_basis(x, y)``.

    Products are diagrammatic: ``(x, y, j)`` then ``(y, z, j')`` is
    ``(x, z, j + j')`` when ``x ≼ σ^{j+j'} z`` and zero otherwise.
    """
    mods = sorted(set(C))
    m = cat.m
    basis = []
    index: Dict[Tuple[ModIdx, ModIdx, int], int] = {}
    for x in mods:
        for y in mods:
            for j in cat.hom_basis(x, y):
                index[(x, y, j)] = len(basis)
                basis.append((x, y, j))
    out_of: Dict[ModIdx, List[Tuple[ModIdx, int]]] = {x: [] for x in mods}
    for x, y, j in basis:
        out_of[x].append((y, j))
    mult = {}
    for (x, y, j), a in index.items():
        for z, j2 in out_of[y]:
            total = j + j2
            target = shift(z, total, m) if cat.cyclic else z
            if precedes(x, target):
                mult[(a, index[(y, z, j2)])] = index[(x, z, total)]
    identity = {x: index[(x, x, 0)] for x in mods}
    return FinAlg(mods, basis, mult, identity)


def check_full(cat: ModCat, C: Iterable[ModIdx], n: int) -> Verdict:
    """Certify ``C`` as ``nd𝐙``-cluster-tilting via ``gldim End(C) <= nd + 1``."""
    cset = set(C)
    v = Verdict()
    v.failures.extend(_generator_failures(cat, cset))
    v.failures.extend(rigidity(cat, cset, n).failures)
    for x in sorted(cset):
        w = cat.syzygy_power(x, n)
        if w is not None and w not in cset:
            v.failures.append(("NotOmegaClosed", x))
    if v.failures:
        v.notes.append("End-algebra gldim skipped after earlier failures")
        return v
    bound = n * cat.d + 1
    try:
        g = finalg.gldim(end_algebra(cat, cset), bound)
        v.notes.append(f"gldim End = {g}")
    except ExceedsBound:
        v.failures.append(("EndGldimFail", (bound,)))
    return v


# ---------------------------------------------------------------------------
# search


def _forced(cat: ModCat, n: int) -> Optional[set]:
    """Closure of ``proj ∪ inj`` under the moves every ``nd𝐙``-CT must contain.

    Returns None when some forced move hits the zero module.
    """
    todo = list(cat.projectives()) + list(cat.injectives())
    out: set = set()
    while todo:
        x = todo.pop()
        if x in out:
            continue
        out.add(x)
        if not cat.is_injective(x):
            y = cat.tau_nd_inv(x, n)
            if y is None:
                return None
            todo.append(y)
        if not cat.is_projective(x):
            y = cat.tau_nd(x, n)
            if y is None:
                return None
            todo.append(y)
        for w in (cat.syzygy_power(x, n), cat.cosyzygy_power(x, n)):
            if w is not None:
                todo.append(w)
    return out


def _cycles(cat: ModCat, n: int, exclude: set) -> List[Tuple[ModIdx, ...]]:
    """``τ_nd``-cycles of non-projective non-injective modules outside ``exclude``."""
    seen: set = set()
    out = []
    for x in cat.modules():
        if x in exclude or x in seen:
            continue
        orbit = [x]
        ok = True
        y = x
        while True:
            if cat.is_projective(y) or cat.is_injective(y):
                ok = False
                break
            y = cat.tau_nd_inv(y, n)
            if y is None or y in exclude:
                ok = False
                break
            if y == x:
                break
            if y in orbit:
                ok = False
                break
            orbit.append(y)
        seen.update(orbit)
        if ok and all(cat.tau_nd(z, n) is not None for z in orbit):
            out.append(tuple(sorted(orbit)))
    return out


def _compatible(cat: ModCat, a: Iterable[ModIdx], b: Iterable[ModIdx], n: int) -> bool:
    a, b = list(a), list(b)
    for k in range(1, n):
        for y in a:
            for x in b:
                if cat.ext_kd_dim(y, x, k) or cat.ext_kd_dim(x, y, k):
                    return False
    return True


def _cap(cap: Optional[int]) -> int:
    return env_cap(DEFAULT_CAP) if cap is None else cap


def search(series: KupischSeries, d: int, n: int, mode: str = "full", cap: Optional[int] = None,
           subset_cap: int = DEFAULT_SUBSET_CAP) -> List[ModuleSet]:
    """All ``nd𝐙``-cluster-tilting subcategories, by brute force.

    Every member outside ``proj ∪ inj`` lies on a ``τ_nd``-chain, so the
    candidates are a forced core plus unions of ``τ_nd``-cycles.  ``mode``
    ``"full"`` certifies maximal compatible unions with :func:`check_full`;
    ``"partial"`` runs :func:`check_partial` on every compatible union.
    """
    if mode not in ("full", "partial"):
        raise ValueError(f"unknown mode {mode!r}")
    cat = ModCat(series, d)
    mods = cat.modules()
    if len(mods) > _cap(cap):
        raise CapExceeded(f"|ind M| = {len(mods)} exceeds cap {_cap(cap)}")
    core = _forced(cat, n)
    if core is None or not _compatible(cat, core, core, n):
        return []
    cycles = [c for c in _cycles(cat, n, core)
              if _compatible(cat, c, c, n) and _compatible(cat, c, core, n)]
    graph = nx.Graph()
    graph.add_nodes_from(range(len(cycles)))
    for i, j in itertools.combinations(range(len(cycles)), 2):
        if _compatible(cat, cycles[i], cycles[j], n):
            graph.add_edge(i, j)
    if mode == "full":
        groups = [sorted(c) for c in nx.find_cliques(graph)] if cycles else [[]]
        check = check_full
    else:
        groups = [[]]
        for c in nx.enumerate_all_cliques(graph):
            groups.append(sorted(c))
            if len(groups) > subset_cap:
                raise CapExceeded(f"more than {subset_cap} candidate unions")
        check = check_partial
    found = set()
    for g in groups:
        cand = set(core)
        for i in g:
            cand.update(cycles[i])
        if check(cat, cand, n).accepted:
            found.add(tuple(sorted(cand)))
    return [ModuleSet(series, d, c) for c in sorted(found)]


# ---------------------------------------------------------------------------
# classification


def _homogeneous_ok(ell: int, steps: int, d: int, n: int) -> Tuple[bool, str]:
    """Arithmetic condition for one homogeneous piece with ``steps = width - 1``."""
    if steps == 0:
        return True, "width 1"
    if ell == 2 and steps == n:
        return True, f"ℓ = 2 and m_i = n = {n}"
    if (n - 2) % (d + 1) == 0:
        want = (n - 2) // (d + 1) * (ell + d - 1) + ell
        if steps == want:
            return True, f"(d+1) | (n-2) and m_i = {want}"
        return False, f"(d+1) | (n-2) but m_i = {steps} ≠ {want}"
    if ell == 2:
        return False, f"ℓ = 2 but m_i = {steps} ≠ n = {n}"
    return False, f"(d+1) ∤ (n-2)"


def _piece_modules(piece: KupischSeries, d: int, n: int) -> List[ModIdx]:
    """``add(A_i ⊕ DA_i)``, plus the ``τ_nd^{-k} M(1, ..., d+1)`` chain when ``ℓ_i = 2``."""
    cat = ModCat(piece, d)
    out = set(cat.projectives()) | set(cat.injectives())
    if piece.ell == 2:
        x: Optional[ModIdx] = tuple(range(1, d + 2))
        while x is not None:
            out.add(x)
            x = cat.tau_nd_inv(x, n)
    return sorted(out)


def _assemble(pieces: List[KupischSeries], d: int, n: int, wrap: bool) -> List[ModIdx]:
    out = set()
    offset = 0
    for p in pieces:
        for x in _piece_modules(p, d, n):
            out.add(tuple(a + offset for a in x))
        offset += p.width - 1
    out.update(kupisch.bridges(pieces, d, wrap=wrap))
    return sorted(out)


def _piece_trace(pieces: List[KupischSeries], d: int, n: int) -> Tuple[bool, List[dict]]:
    ok = True
    trace = []
    for p in pieces:
        good, why = _homogeneous_ok(p.ell, p.width - 1, d, n)
        trace.append({"piece": list(p.entries), "ell": p.ell, "m": p.width - 1, "ok": good, "why": why})
        ok = ok and good
    return ok, trace


def _decide(series: KupischSeries, d: int, n: int):
    """``(exists, modules or None, trace, status)`` for one ``n``."""
    cat = ModCat(series, d)
    if n == 1:
        return True, list(cat.modules()), [{"rule": "n = 1", "why": "M itself"}], "theorem"
    obs = kupisch.find_obstruction(series)
    if obs is not None:
        return False, None, [{"rule": "shape", "why": f"pattern ({obs[1]}) at position {obs[0]}"}], "theorem"
    if not series.cyclic:
        pieces, _ = kupisch.deglue_all(series, d, n)
        ok, trace = _piece_trace(pieces, d, n)
        return ok, (_assemble(pieces, d, n, False) if ok else None), trace, "theorem"
    if kupisch.is_homogeneous(series):
        ell, m = series.ell, series.width
        if ell == 2:
            ok = m % n == 0
            trace = [{"rule": "self-injective ℓ = 2", "why": f"n | m: {n} | {m} is {ok}"}]
            if not ok:
                return False, None, trace, "theorem"
            mods = set(cat.projectives())
            mods.update(cat.canon(tuple(range(a, a + d + 1))) for a in range(1, m + 1, n))
            return True, sorted(mods), trace, "theorem"
        ok = m % n == 0 and (ell - 2) % n == 0
        trace = [{"rule": "self-injective ℓ ≥ 3 (necessary only)",
                  "why": f"n | m and n | (ℓ-2): {ok}"}]
        return (None if ok else False), None, trace, "necessary_only"
    point = kupisch.self_deglue_point(series)
    pieces, _ = kupisch.deglue_all(point.series, d, n)
    ok, trace = _piece_trace(pieces, d, n)
    trace.insert(0, {"rule": "self-degluing", "series": list(point.series.entries), "rotation": point.offset})
    if not ok:
        return False, None, trace, "theorem"
    mods = {cat.canon(tuple(a + point.offset for a in x)) for x in _assemble(pieces, d, n, True)}
    return True, sorted(mods), trace, "theorem"


def n_bound(series: KupischSeries, d: int) -> int:
    """No ``n`` beyond this bound satisfies any classification condition."""
    return (d + 1) * (series.width + 1) + 2


def classify(series: KupischSeries, d: int, n: int) -> Classification:
    exists, mods, trace, status = _decide(series, d, n)
    values = []
    for k in range(1, n_bound(series, d) + 1):
        e = _decide(series, d, k)[0]
        if e or e is None:
            values.append(k)
    sub = ModuleSet(series, d, tuple(mods)) if mods is not None else None
    return Classification(exists, n, values, sub, trace, status)


# ---------------------------------------------------------------------------
# gluing


def glue_subcats(ca: ModuleSet, cb: ModuleSet) -> ModuleSet:
    """Glue subcategories over ``A`` and ``B`` along the simple bridge."""
    if ca.d != cb.d:
        raise ValueError("d differs")
    d = ca.d
    glued = kupisch.glue(ca.series, cb.series)
    m = ca.series.width
    bridge_a = tuple(range(m, m + d + 1))
    bridge_b = tuple(range(1, d + 2))
    if bridge_a not in ca:
        raise BridgeMissing(f"{bridge_a} missing from the first subcategory")
    if bridge_b not in cb:
        raise BridgeMissing(f"{bridge_b} missing from the second subcategory")
    mods = set(ca.modules)
    mods.update(tuple(a + m - 1 for a in x) for x in cb.modules)
    return ModuleSet(glued, d, tuple(mods))


def restrict(c: ModuleSet, piece: KupischSeries, offset: int) -> ModuleSet:
    """Modules of ``c`` lying in the piece starting at ``offset + 1``, in piece coordinates."""
    cat = ModCat(piece, c.d)
    own = set(cat.modules())
    mods = [tuple(a - offset for a in x) for x in c.modules]
    return ModuleSet(piece, c.d, tuple(x for x in mods if x in own))
