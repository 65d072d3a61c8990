"""Independent verifier: d-Nakayama algebras as bound quiver algebras.

The algebra is built from its quiver ``Q^d`` (vertices ``os^d``, arrows
``a_i(x): x -> x + e_i``) modulo the commutativity relations
``a_i(x+e_j) a_j(x) - a_j(x+e_i) a_i(x)``, where a term through a missing
vertex is dropped.  For ``d = 1`` these relations are empty and the Nakayama
relations (a path ending at ``i`` of length ``ℓ_i`` vanishes) are added.

Modules are right modules: ``P(v)`` is spanned by the paths ending at ``v``.
They are stored as representations of the opposite quiver, so arrows of a
:class:`~nakct.finalg.Rep` go from ``z`` to ``z - e_i``.  Over a cyclic series
the vertices are σ-orbit representatives and paths are tracked in the
universal cover so that different lifts never mix.

Nothing here uses the closed formulas of :mod:`nakct.modcat` beyond the
definition of ``M(x)`` as an interval representation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import finalg, linalg, ordseq
from .finalg import BasicAlgebra, ExceedsBound, FinAlg, NotMonomial, Projective, Rep
from .kupisch import KupischSeries
from .linalg import Vec
from .ordseq import OrdSeq

DEFAULT_CAP = 500


class CapExceeded(RuntimeError):
    pass


def env_cap(default: int) -> int:
    raw = os.environ.get("NAKCT_CAP")
    return int(raw) if raw else default


@dataclass
class BoundQuiver:
    vertices: List[OrdSeq]
    arrows: List[Tuple[OrdSeq, OrdSeq, int]]          # a_i(x): x -> x + e_i, as (x, target, i)
    relations: List[List[Tuple[int, OrdSeq, int, int]]]  # sum of coef * a_j(x + e_i) a_i(x) as (coef, x, i, j)


def _unit(d: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(d))


class NakayamaAlgebra(BasicAlgebra):
    """``A^d_ℓ`` as a path algebra modulo relations."""

    def __init__(self, series: KupischSeries, d: int, cap: Optional[int] = None):
        self.series = series
        self.d = d
        self.cyclic = series.cyclic
        self.m = series.width
        cap = env_cap(DEFAULT_CAP) if cap is None else cap
        verts = list(ordseq.enumerate_os(series, d))
        if len(verts) > cap:
            raise CapExceeded(f"|os^{d}| = {len(verts)} exceeds cap {cap}")
        self.vertices = verts
        self._vset = set(verts)
        # module arrows: opposite quiver, w -> w - e_i
        self.arrows = []
        self._arrow_at: Dict[Tuple[OrdSeq, int], int] = {}
        for w in verts:
            for i in range(d):
                t = tuple(a - (1 if k == i else 0) for k, a in enumerate(w))
                if self.member(t):
                    self._arrow_at[(w, i)] = len(self.arrows)
                    self.arrows.append((w, self.canon(t)))
        self.max_length = max(series.ell * (d + 1) * max(self.m, 1), series.ell + 1) + d

    # -- index helpers ------------------------------------------------------

    def member(self, z: Sequence[int]) -> bool:
        return ordseq.member(tuple(z), self.series, self.d)

    def canon(self, z: Sequence[int]) -> OrdSeq:
        z = tuple(z)
        return ordseq.canonicalize(z, self.series)[0] if self.cyclic else z

    def arrow(self, w: OrdSeq, i: int) -> Optional[int]:
        return self._arrow_at.get((self.canon(w), i))

    def _down(self, z: Tuple[int, ...], i: int) -> Tuple[int, ...]:
        return tuple(a - (1 if k == i else 0) for k, a in enumerate(z))

    def relations_at(self, z: Tuple[int, ...]) -> List[List[Tuple[int, int, int]]]:
        """Relations starting at cover vertex ``z`` of the opposite quiver.

        Each relation is a list of ``(coef, i, j)`` meaning the path
        ``z -> z - e_i -> z - e_i - e_j``.
        """
        out = []
        d = self.d
        for i in range(d):
            for j in range(i + 1, d):
                end = self._down(self._down(z, i), j)
                if not self.member(end):
                    continue
                terms = []
                if self.member(self._down(z, i)):
                    terms.append((1, i, j))
                if self.member(self._down(z, j)):
                    terms.append((-1, j, i))
                if terms:
                    out.append(terms)
        return out

    def bound_quiver(self) -> BoundQuiver:
        arrows = []
        for w, i in sorted(self._arrow_at):
            x = self._down(w, i)
            arrows.append((self.canon(x), w, i))
        rels = []
        for z in self.vertices:
            for terms in self.relations_at(z):
                x = tuple(a - (1 if k in (terms[0][1], terms[0][2]) else 0) for k, a in enumerate(z))
                rels.append([(c, self.canon(x), j, i) for c, i, j in terms])
        return BoundQuiver(list(self.vertices), arrows, rels)

    def _length_limit(self, v: OrdSeq) -> Optional[int]:
        # Nakayama relations for d = 1: paths ending at i have length < ℓ_i
        if self.d != 1:
            return None
        return self.series.at(v[0])

    # -- projectives ----------------------------------------------------------

    def projective(self, v: OrdSeq) -> Projective:
        d = self.d
        cover: List[Tuple[int, ...]] = []
        tree: List[Tuple[OrdSeq, int, Optional[int], Optional[int]]] = []
        count: Dict[OrdSeq, int] = {}

        def new_elem(t, parent, arrow):
            w = self.canon(t)
            idx = count.get(w, 0)
            count[w] = idx + 1
            tree.append((w, idx, parent, arrow))
            cover.append(t)
            return len(tree) - 1

        new_elem(tuple(v), None, None)
        prod: Dict[Tuple[int, int], Vec] = {}
        prev: List[int] = []
        cur: List[int] = [0]
        limit = self._length_limit(v)
        level = 0
        while cur:
            level += 1
            if level > self.max_length:
                raise RuntimeError(f"path length cap {self.max_length} reached at {v}")
            cands: List[Tuple[int, int]] = []
            if limit is None or level < limit:
                for b in cur:
                    t = cover[b]
                    for i in range(d):
                        if self.member(self._down(t, i)):
                            cands.append((b, i))
            cidx = {c: n for n, c in enumerate(cands)}
            ech = linalg.Echelon()
            for c in prev:
                for terms in self.relations_at(cover[c]):
                    vec: Vec = {}
                    for coef, i, j in terms:
                        for b, x in prod.get((c, i), {}).items():
                            linalg.axpy(vec, coef * x, {cidx[(b, j)]: 1})
                    if vec:
                        ech.add(vec)
            survivors = [n for n in range(len(cands)) if n not in ech.rows]
            new_id: Dict[int, int] = {}
            for n in survivors:
                b, i = cands[n]
                new_id[n] = new_elem(self._down(cover[b], i), b, self._arrow_at[(self.canon(cover[b]), i)])
            for n, (b, i) in enumerate(cands):
                red, _ = ech.reduce({n: 1})
                prod[(b, i)] = {new_id[k]: x for k, x in red.items()}
            # arrows out of the current level that were cut by the length limit act by zero
            for b in cur:
                for i in range(d):
                    prod.setdefault((b, i), {})
            prev, cur = cur, [new_id[n] for n in survivors]
        dims = dict(count)
        maps: Dict[int, List[Vec]] = {}
        for (b, i), vec in prod.items():
            w = tree[b][0]
            a = self._arrow_at.get((w, i))
            if a is None:
                continue
            tgt = self.arrows[a][1]
            cols = maps.setdefault(a, [dict() for _ in range(dims[w])])
            cols[tree[b][1]] = {tree[e][1]: x for e, x in vec.items()}
            assert all(tree[e][0] == tgt for e in vec)
        return Projective(tuple(v), Rep(dims, maps), tree, cover)

    # -- interval modules -----------------------------------------------------

    def build_module(self, x: Sequence[int]) -> Rep:
        """``M(x)``: one dimension per support vertex, identity along internal arrows."""
        x = tuple(x)
        d = self.d
        if not ordseq.member(x, self.series, d + 1):
            raise ValueError(f"{x} is not in os^{d + 1}")
        lo = x[:d]
        hi = tuple(a - 1 for a in x[1:])
        supp: List[Tuple[int, ...]] = []

        def rec(i, acc):
            if i == d:
                if ordseq.precedes(lo, acc) and ordseq.precedes(acc, hi) and self.member(acc):
                    supp.append(acc)
                return
            for a in range(lo[i], hi[i] + 1):
                if acc and a <= acc[-1]:
                    continue
                rec(i + 1, acc + (a,))

        rec(0, ())
        return self._interval_rep(supp)

    def _interval_rep(self, supp: List[Tuple[int, ...]]) -> Rep:
        pos: Dict[Tuple[int, ...], Tuple[OrdSeq, int]] = {}
        dims: Dict[OrdSeq, int] = {}
        for z in supp:
            w = self.canon(z)
            pos[z] = (w, dims.get(w, 0))
            dims[w] = dims.get(w, 0) + 1
        maps: Dict[int, List[Vec]] = {}
        for z in supp:
            w, idx = pos[z]
            for i in range(self.d):
                t = self._down(z, i)
                if t in pos:
                    a = self._arrow_at[(w, i)]
                    cols = maps.setdefault(a, [dict() for _ in range(dims[w])])
                    cols[idx] = {pos[t][1]: 1}
        return Rep(dims, maps)

    def relations_vanish(self, rep: Rep) -> bool:
        """Evaluate every relation (and the d = 1 length relations) on ``rep``."""
        for w in self.vertices:
            n = rep.dims.get(w, 0)
            if not n:
                continue
            for terms in self.relations_at(w):
                total = [dict() for _ in range(n)]
                for coef, i, j in terms:
                    mat = self._path_matrix(rep, w, [i, j])
                    for k in range(n):
                        linalg.axpy(total[k], coef, mat[k])
                if any(total):
                    return False
            limit = self._length_limit(w)
            if limit is not None and self.member(tuple(a - limit for a in w)):
                if any(self._path_matrix(rep, w, [0] * limit)):
                    return False
        return True

    def _path_matrix(self, rep: Rep, w: OrdSeq, dirs: List[int]) -> List[Vec]:
        cur = [{k: 1} for k in range(rep.dims.get(w, 0))]
        z = w
        for i in dirs:
            a = self._arrow_at.get((self.canon(z), i))
            if a is None:
                return [dict() for _ in cur]
            mat = rep.maps.get(a)
            cur = [linalg.apply(mat, c) if mat else {} for c in cur]
            z = self._down(z, i)
        return cur

    def projective_rep(self, v: OrdSeq) -> Rep:
        return self.projective_cached(self.canon(v)).rep

    # -- FinAlg view ----------------------------------------------------------

    def to_finalg(self) -> FinAlg:
        """Structure constants on the path basis; raises if not monomial."""
        basis = []
        index: Dict[Tuple[OrdSeq, int], int] = {}
        identity = {}
        projs = {v: self.projective_cached(v) for v in self.vertices}
        for v in self.vertices:
            p = projs[v]
            for k, (w, idx, pa, ar) in enumerate(p.tree):
                rel = tuple(a - b for a, b in zip(p.basis_ids[k], v))
                index[(v, k)] = len(basis)
                basis.append((v, w, rel))
            identity[v] = index[(v, 0)]
        by_pos = {v: {(t[0], t[1]): k for k, t in enumerate(projs[v].tree)} for v in self.vertices}
        mult = {}
        for v in self.vertices:
            p = projs[v]
            for k, (w, idx, _, _) in enumerate(p.tree):
                q = projs[w]
                for k2 in range(len(q.tree)):
                    path = []
                    e = k2
                    while q.tree[e][2] is not None:
                        path.append(q.tree[e][3])
                        e = q.tree[e][2]
                    vec: Vec = {idx: 1}
                    at = w
                    for ar in reversed(path):
                        mat = p.rep.maps.get(ar)
                        vec = linalg.apply(mat, vec) if mat else {}
                        at = self.arrows[ar][1]
                        if not vec:
                            break
                    if not vec:
                        continue
                    if len(vec) != 1 or next(iter(vec.values())) != 1:
                        raise NotMonomial(f"product at {v} is {vec}")
                    (j, _), = vec.items()
                    mult[(index[(v, k)], index[(w, k2)])] = index[(v, by_pos[v][(at, j)])]
        return FinAlg(list(self.vertices), basis, mult, identity)


def build_algebra(series: KupischSeries, d: int, cap: Optional[int] = None) -> Tuple[BoundQuiver, FinAlg]:
    """The bound quiver and its path algebra modulo relations as structure constants."""
    alg = NakayamaAlgebra(series, d, cap)
    return alg.bound_quiver(), alg.to_finalg()


# ---------------------------------------------------------------------------
# homological invariants


def hom_dim(alg: BasicAlgebra, m: Rep, n: Rep) -> int:
    return finalg.hom_dim(alg, m, n)


def min_proj_resolution(alg: BasicAlgebra, m: Rep, length: int) -> Tuple[List[Dict], List[Rep]]:
    """Top multiplicities of ``P_0..P_length`` and the syzygies ``Ω^1..``."""
    return finalg.min_resolution(alg, m, length)


def syzygy_chain(alg: BasicAlgebra, m: Rep, top: int) -> List[Tuple[Rep, Dict, Rep]]:
    """``(Ω^{i-1}, top multiplicities of P_{i-1}, Ω^i)`` for ``i = 1..top``."""
    out = []
    cur = m
    for _ in range(top):
        if cur.is_zero():
            out.append((cur, {}, cur))
            continue
        mult, ker = finalg.proj_cover_and_syzygy(alg, cur)
        out.append((cur, mult, ker))
        cur = ker
    return out


def ext_from_chain(alg: BasicAlgebra, chain: List[Tuple[Rep, Dict, Rep]], n: Rep) -> List[int]:
    """``[dim Ext^i(m, n) for i in 1..len(chain)]`` from a precomputed syzygy chain.

    From ``0 -> Ω^i -> P_{i-1} -> Ω^{i-1} -> 0`` and ``Ext^1(P, -) = 0``:
    ``dim Ext^i = hom(Ω^i, n) - hom(P_{i-1}, n) + hom(Ω^{i-1}, n)``, with
    ``hom(P(v), n) = dim n_v``.
    """
    out = []
    hom_prev = None
    for prev, mult, ker in chain:
        if prev.is_zero():
            out.append(0)
            hom_prev = 0
            continue
        if hom_prev is None:
            hom_prev = finalg.hom_dim(alg, prev, n)
        hom_p = sum(k * n.dims.get(v, 0) for v, k in mult.items())
        hom_ker = finalg.hom_dim(alg, ker, n) if not ker.is_zero() else 0
        out.append(hom_ker - hom_p + hom_prev)
        hom_prev = hom_ker
    return out


def ext_dims(alg: BasicAlgebra, m: Rep, n: Rep, top: int) -> List[int]:
    """``[dim Ext^i(m, n) for i in 1..top]``."""
    return ext_from_chain(alg, syzygy_chain(alg, m, top), n)


def ext_dim(alg: BasicAlgebra, m: Rep, n: Rep, i: int) -> int:
    return ext_dims(alg, m, n, i)[-1]


def gldim(series: KupischSeries, d: int, bound: int, cap: Optional[int] = None) -> int:
    return finalg.gldim(NakayamaAlgebra(series, d, cap), bound)
