"""Basic finite-dimensional algebras, their modules and global dimension.

A module over a basic algebra is stored as a representation of its Gabriel
quiver: a dimension per vertex and one matrix per arrow.  Arrows generate the
radical, so this determines the action of every basis element.  Matrices are
lists of image columns in the sparse format of :mod:`nakct.linalg`.

Two kinds of algebra share the helpers below: :class:`FinAlg`, given by
monomial structure constants, and the bound quiver algebras built by
:mod:`nakct.oracle`.  Both only have to provide ``vertices``, ``arrows`` and
``projective``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Vec


class ExceedsBound(Exception):
    """A projective dimension went past the caller's bound."""

    def __init__(self, bound: int):
        super().__init__(f"projective dimension exceeds {bound}")
        self.bound = bound


class ZeroModule(ValueError):
    pass


class NotMonomial(ValueError):
    pass


Vertex = Hashable
Arrow = Tuple[Vertex, Vertex]


@dataclass
class Rep:
    """A module as a quiver representation.

    ``maps[a]`` is the matrix of arrow ``a`` (an index into the algebra's
    arrow list) from the source space to the target space, as image columns.
    Missing arrows act by zero.
    """

    dims: Dict[Vertex, int]
    maps: Dict[int, List[Vec]] = field(default_factory=dict)

    def dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dim() == 0

    def dim_vector(self) -> Dict[Vertex, int]:
        return {v: n for v, n in self.dims.items() if n}


@dataclass
class Projective:
    """An indecomposable projective ``P(v)`` together with a path basis.

    ``tree`` lists the basis elements as ``(vertex, index, parent, arrow)``
    in creation order; element ``k`` equals ``tree[parent]`` times ``arrow``
    and the root ``(v, 0, None, None)`` is the idempotent.
    """

    vertex: Vertex
    rep: Rep
    tree: List[Tuple[Vertex, int, Optional[int], Optional[int]]]
    basis_ids: Optional[List[Hashable]] = None


class BasicAlgebra:
    vertices: List[Vertex]
    arrows: List[Arrow]

    def projective(self, v: Vertex) -> Projective:  # pragma: no cover - interface
        raise NotImplementedError

    def arrows_into(self) -> Dict[Vertex, List[int]]:
        cache = getattr(self, "_arrows_into", None)
        if cache is None:
            cache = {v: [] for v in self.vertices}
            for a, (_, t) in enumerate(self.arrows):
                cache[t].append(a)
            self._arrows_into = cache
        return cache

    def projective_cached(self, v: Vertex) -> Projective:
        cache = self.__dict__.setdefault("_proj_cache", {})
        if v not in cache:
            cache[v] = self.projective(v)
        return cache[v]


# ---------------------------------------------------------------------------
# monomial algebras from structure constants


class FinAlg(BasicAlgebra):
    """Basic algebra with a basis of morphism symbols ``(source, target, tag)``.

    ``mult[(a, b)] = c`` records the nonzero products of basis indices in
    diagrammatic order: ``a`` then ``b``.  Identities are the basis elements
    listed in ``identity``.
    """

    def __init__(self, objects: Sequence[Vertex], basis: Sequence[Tuple[Vertex, Vertex, Hashable]],
                 mult: Dict[Tuple[int, int], int], identity: Dict[Vertex, int]):
        self.objects = list(objects)
        self.vertices = self.objects
        self.basis = list(basis)
        self.mult = dict(mult)
        self.identity = dict(identity)
        self._id_set = set(self.identity.values())
        self._out: Dict[Vertex, List[int]] = {o: [] for o in self.objects}
        for i, (s, _, _) in enumerate(self.basis):
            self._out[s].append(i)
        self._right: Dict[int, List[Tuple[int, int]]] = {}
        for (a, b), c in self.mult.items():
            self._right.setdefault(a, []).append((b, c))
        self._find_arrows()

    def __len__(self) -> int:
        return len(self.basis)

    def product(self, a: int, b: int) -> Optional[int]:
        return self.mult.get((a, b))

    def radical(self) -> List[int]:
        return [i for i in range(len(self.basis)) if i not in self._id_set]

    def _find_arrows(self) -> None:
        rad = set(self.radical())
        rad2 = set()
        for (a, b), c in self.mult.items():
            if a in rad and b in rad:
                rad2.add(c)
        self.arrow_basis = sorted(rad - rad2)
        self.arrows = [(self.basis[i][0], self.basis[i][1]) for i in self.arrow_basis]
        self._arrow_of = {b: k for k, b in enumerate(self.arrow_basis)}

    def check_associative(self) -> bool:
        """Exhaustive check over composable triples of basis elements."""
        n = len(self.basis)
        for a in range(n):
            for b in self._out[self.basis[a][1]]:
                ab = self.mult.get((a, b))
                for c in self._out[self.basis[b][1]]:
                    bc = self.mult.get((b, c))
                    left = self.mult.get((ab, c)) if ab is not None else None
                    right = self.mult.get((a, bc)) if bc is not None else None
                    if left != right:
                        return False
        return True

    def check_units(self) -> bool:
        for i, (s, t, _) in enumerate(self.basis):
            if self.mult.get((self.identity[s], i)) != i or self.mult.get((i, self.identity[t])) != i:
                return False
        return True

    def nilpotency_index(self) -> int:
        """Smallest ``k`` with ``rad^k = 0``."""
        rad = self.radical()
        layer = set(rad)
        k = 1
        while layer:
            nxt = set()
            for a in layer:
                for b, c in self._right.get(a, []):
                    if b not in self._id_set:
                        nxt.add(c)
            layer = nxt
            k += 1
            if k > len(self.basis) + 1:
                raise NotMonomial("radical is not nilpotent")
        return k

    def projective(self, e: Vertex) -> Projective:
        """The right module ``e * basis`` spanned by elements with source ``e``."""
        root = self.identity[e]
        order = [root]
        parent = {root: (None, None)}
        i = 0
        while i < len(order):
            a = order[i]
            i += 1
            for b, c in self._right.get(a, []):
                if b in self._arrow_of and c not in parent:
                    parent[c] = (a, self._arrow_of[b])
                    order.append(c)
        if len(order) != len(self._out[e]):
            raise NotMonomial(f"arrows do not generate the projective at {e!r}")
        pos: Dict[int, Tuple[Vertex, int]] = {}
        dims: Dict[Vertex, int] = {v: 0 for v in self.objects}
        for b in order:
            t = self.basis[b][1]
            pos[b] = (t, dims[t])
            dims[t] += 1
        maps: Dict[int, List[Vec]] = {}
        for k, ab in enumerate(self.arrow_basis):
            s, t = self.arrows[k]
            if not dims[s]:
                continue
            cols: List[Vec] = [dict() for _ in range(dims[s])]
            for b in order:
                if self.basis[b][1] != s:
                    continue
                c = self.mult.get((b, ab))
                if c is not None:
                    cols[pos[b][1]] = {pos[c][1]: 1}
            maps[k] = cols
        index = {b: n for n, b in enumerate(order)}
        tree = []
        for b in order:
            pa, ar = parent[b]
            tree.append((pos[b][0], pos[b][1], None if pa is None else index[pa], ar))
        return Projective(e, Rep(dims, maps), tree, list(order))

    def act(self, m: Rep, b: int) -> List[Vec]:
        """Matrix of basis element ``b`` acting on ``m``, from its source to its target space."""
        s = self.basis[b][0]
        mat = [{j: 1} for j in range(m.dims.get(s, 0))]
        for ar in self.path_of(b):
            src = self.arrows[ar][0]
            mat = linalg.compose(m.maps.get(ar, zero_cols(m.dims.get(src, 0))), mat)
        return mat

    def path_of(self, b: int) -> List[int]:
        """Arrow indices whose product is basis element ``b``."""
        s = self.basis[b][0]
        proj = self.projective_cached(s)
        k = proj.basis_ids.index(b)
        path = []
        while proj.tree[k][2] is not None:
            path.append(proj.tree[k][3])
            k = proj.tree[k][2]
        return path[::-1]


def path_algebra(n: int) -> FinAlg:
    """Path algebra of the linear quiver ``1 -> 2 -> ... -> n``."""
    basis = []
    index = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            index[(i, j)] = len(basis)
            basis.append((i, j, 0))
    mult = {}
    for (i, j), a in index.items():
        for k in range(j, n + 1):
            mult[(a, index[(j, k)])] = index[(i, k)]
    return FinAlg(list(range(1, n + 1)), basis, mult, {i: index[(i, i)] for i in range(1, n + 1)})


# ---------------------------------------------------------------------------
# generic module operations


def zero_cols(n: int) -> List[Vec]:
    return [dict() for _ in range(n)]


def radical_images(alg: BasicAlgebra, m: Rep) -> Dict[Vertex, List[Vec]]:
    out: Dict[Vertex, List[Vec]] = {v: [] for v in alg.vertices}
    for a, (s, t) in enumerate(alg.arrows):
        for col in m.maps.get(a, ()):
            if col:
                out[t].append(col)
    return out


def top(alg: BasicAlgebra, m: Rep) -> Dict[Vertex, List[int]]:
    """Unit vectors of ``m`` spanning a complement of ``rad m`` at each vertex."""
    rad = radical_images(alg, m)
    return {v: linalg.complement_units(rad[v], m.dims.get(v, 0)) for v in alg.vertices if m.dims.get(v, 0)}


def top_multiplicities(alg: BasicAlgebra, m: Rep) -> Dict[Vertex, int]:
    return {v: len(u) for v, u in top(alg, m).items() if u}


def proj_cover_and_syzygy(alg: BasicAlgebra, m: Rep) -> Tuple[Dict[Vertex, int], Rep]:
    """Minimal projective cover of ``m`` and its kernel.

    Returns the multiplicity of each indecomposable projective in the cover
    and the kernel as a :class:`Rep`.
    """
    if m.is_zero():
        raise ZeroModule("zero module has no projective cover")
    gens = top(alg, m)
    blocks: List[Tuple[Projective, Dict[Vertex, int]]] = []
    cover_dims: Dict[Vertex, int] = {v: 0 for v in alg.vertices}
    mult: Dict[Vertex, int] = {}
    gen_vecs: List[int] = []
    for v in alg.vertices:
        for u in gens.get(v, ()):
            p = alg.projective_cached(v)
            mult[v] = mult.get(v, 0) + 1
            blocks.append((p, dict(cover_dims)))
            gen_vecs.append(u)
            for w, n in p.rep.dims.items():
                cover_dims[w] = cover_dims.get(w, 0) + n
    # image of each cover basis vector: generator times its path
    images: Dict[Vertex, List[Vec]] = {v: [dict() for _ in range(cover_dims[v])] for v in alg.vertices}
    for (p, offset), u in zip(blocks, gen_vecs):
        vals: List[Vec] = []
        for (w, idx, pa, ar) in p.tree:
            if pa is None:
                img = {u: 1}
            else:
                img = linalg.apply(m.maps[ar], vals[pa]) if ar in m.maps else {}
            vals.append(img)
            images[w][offset.get(w, 0) + idx] = img
    kernels: Dict[Vertex, List[Vec]] = {}
    piv: Dict[Vertex, List[int]] = {}
    for w in alg.vertices:
        if cover_dims.get(w, 0):
            kernels[w] = linalg.kernel(images[w])
            piv[w] = linalg.pivots(kernels[w])
    kdims = {w: len(kernels.get(w, ())) for w in alg.vertices}
    # block diagonal arrow matrices of the cover
    cover_maps: Dict[int, List[Vec]] = {}
    for a, (s, t) in enumerate(alg.arrows):
        if not cover_dims[s] or not cover_dims[t]:
            continue
        cols: List[Vec] = []
        for p, offset in blocks:
            ds = p.rep.dims.get(s, 0)
            if not ds:
                continue
            pm = p.rep.maps.get(a)
            off = offset.get(t, 0)
            for j in range(ds):
                cols.append({off + r: x for r, x in pm[j].items()} if pm else {})
        cover_maps[a] = cols
    maps: Dict[int, List[Vec]] = {}
    for a, (s, t) in enumerate(alg.arrows):
        if not kdims[s] or not kdims[t] or a not in cover_maps:
            continue
        cols = [linalg.coords(linalg.apply(cover_maps[a], kv), kernels[t], piv[t]) for kv in kernels[s]]
        if any(cols):
            maps[a] = cols
    return mult, Rep(kdims, maps)


def syzygy(alg: BasicAlgebra, m: Rep) -> Rep:
    return proj_cover_and_syzygy(alg, m)[1]


def proj_dim(alg: BasicAlgebra, m: Rep, bound: int) -> int:
    """Projective dimension of ``m``; raises :class:`ExceedsBound` past ``bound``."""
    if m.is_zero():
        return 0
    k = 0
    cur = m
    while True:
        _, ker = proj_cover_and_syzygy(alg, cur)
        if ker.is_zero():
            return k
        k += 1
        if k > bound:
            raise ExceedsBound(bound)
        cur = ker


def simple(alg: BasicAlgebra, v: Vertex) -> Rep:
    return Rep({v: 1})


def gldim(alg: BasicAlgebra, bound: int) -> int:
    """Global dimension as the maximal projective dimension of a simple."""
    best = 0
    for v in alg.vertices:
        p = alg.projective_cached(v)
        if p.rep.dim() == 1:
            continue
        # the simple at v has syzygy rad P(v)
        try:
            best = max(best, 1 + proj_dim(alg, radical_of_projective(alg, p), bound - 1))
        except ExceedsBound:
            raise ExceedsBound(bound) from None
        if best > bound:
            raise ExceedsBound(bound)
    return best


def radical_of_projective(alg: BasicAlgebra, p: Projective) -> Rep:
    return syzygy(alg, simple(alg, p.vertex))


def min_resolution(alg: BasicAlgebra, m: Rep, length: int) -> Tuple[List[Dict[Vertex, int]], List[Rep]]:
    """Terms ``P_0..P_{length}`` (as top multiplicities) and syzygies ``Ω^1..``."""
    terms: List[Dict[Vertex, int]] = []
    syz: List[Rep] = []
    cur = m
    for _ in range(length + 1):
        if cur.is_zero():
            break
        mult, ker = proj_cover_and_syzygy(alg, cur)
        terms.append(mult)
        syz.append(ker)
        cur = ker
    return terms, syz


# ---------------------------------------------------------------------------
# homomorphisms


def hom_space(alg: BasicAlgebra, m: Rep, n: Rep) -> List[Dict[Vertex, List[Vec]]]:
    """Basis of ``Hom(m, n)``; each map is a dict of per-vertex matrices (columns)."""
    var: Dict[Tuple[Vertex, int, int], int] = {}
    verts = [v for v in alg.vertices if m.dims.get(v, 0) and n.dims.get(v, 0)]
    for v in verts:
        for j in range(m.dims[v]):
            for i in range(n.dims[v]):
                var[(v, i, j)] = len(var)
    if not var:
        return []
    eqs = _hom_equations(alg, m, n, var)
    cols: List[Vec] = [dict() for _ in range(len(var))]
    for r, eq in enumerate(eqs):
        for x, c in eq.items():
            cols[x][r] = c
    ker = linalg.kernel(cols)
    inv = {x: key for key, x in var.items()}
    out = []
    for k in ker:
        f: Dict[Vertex, List[Vec]] = {v: zero_cols(m.dims[v]) for v in verts}
        for x, c in k.items():
            v, i, j = inv[x]
            f[v][j][i] = c
        out.append(f)
    return out


def hom_dim(alg: BasicAlgebra, m: Rep, n: Rep) -> int:
    var: Dict[Tuple[Vertex, int, int], int] = {}
    for v in alg.vertices:
        dm, dn = m.dims.get(v, 0), n.dims.get(v, 0)
        for j in range(dm):
            for i in range(dn):
                var[(v, i, j)] = len(var)
    if not var:
        return 0
    return len(var) - linalg.rank(_hom_equations(alg, m, n, var))


def _hom_equations(alg, m: Rep, n: Rep, var) -> List[Vec]:
    # for arrow a: s -> t require N_a X_s - X_t M_a = 0, entry (i, j)
    eqs: List[Vec] = []
    for a, (s, t) in enumerate(alg.arrows):
        ms, mt, ns, nt = m.dims.get(s, 0), m.dims.get(t, 0), n.dims.get(s, 0), n.dims.get(t, 0)
        if not ms or not nt:
            continue
        na = n.maps.get(a)
        ma = m.maps.get(a)
        rows: Dict[Tuple[int, int], Vec] = {}
        if na is not None and ns:
            # (N_a X_s)[i, j] = sum_k N_a[i, k] X_s[k, j]
            for k in range(ns):
                for i, c in na[k].items():
                    for j in range(ms):
                        eq = rows.setdefault((i, j), {})
                        x = var[(s, k, j)]
                        eq[x] = eq.get(x, 0) + c
        if ma is not None and mt:
            # (X_t M_a)[i, j] = sum_k X_t[i, k] M_a[k, j]
            for j in range(ms):
                for k, c in ma[j].items():
                    for i in range(nt):
                        eq = rows.setdefault((i, j), {})
                        x = var[(t, i, k)]
                        eq[x] = eq.get(x, 0) - c
        for eq in rows.values():
            eq = {x: c for x, c in eq.items() if c}
            if eq:
                eqs.append(eq)
    return eqs


def is_homomorphism(alg: BasicAlgebra, m: Rep, n: Rep, f: Dict[Vertex, List[Vec]]) -> bool:
    for a, (s, t) in enumerate(alg.arrows):
        if not m.dims.get(s, 0):
            continue
        fs = f.get(s, zero_cols(m.dims[s]))
        ft = f.get(t, zero_cols(m.dims.get(t, 0)))
        na = n.maps.get(a, zero_cols(n.dims.get(s, 0)))
        ma = m.maps.get(a, zero_cols(m.dims[s]))
        left = linalg.compose(na, fs) if n.dims.get(s, 0) else zero_cols(m.dims[s])
        right = linalg.compose(ft, ma) if m.dims.get(t, 0) else zero_cols(m.dims[s])
        if left != right:
            return False
    return True


def is_isomorphic(alg: BasicAlgebra, m: Rep, n: Rep, seed: int = 0, tries: int = 4) -> bool:
    """Decide ``m ≅ n`` by testing random combinations of a Hom basis.

    A positive answer carries an explicit invertible homomorphism; a negative
    one is exact when ``Hom`` is zero and otherwise holds with probability
    close to one.
    """
    import random

    if m.dim_vector() != n.dim_vector():
        return False
    basis = hom_space(alg, m, n)
    if not basis:
        return m.is_zero()
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-50, 50) for _ in basis]
        ok = True
        for v, d in m.dim_vector().items():
            cols: List[Vec] = [dict() for _ in range(d)]
            for c, f in zip(coeffs, basis):
                for j in range(d):
                    linalg.axpy(cols[j], c, f[v][j])
            if linalg.rank(cols) != d:
                ok = False
                break
        if ok:
            return True
    return False
