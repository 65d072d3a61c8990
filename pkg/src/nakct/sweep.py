"""Bounded sweeps comparing the closed formulas with the oracle and the classifier with search."""

from __future__ import annotations

import itertools
from typing import Iterator, List

from . import cluster, finalg, kupisch, oracle
from .kupisch import KupischSeries
from .modcat import ModCat


def acyclic_series(max_width: int, max_ell: int) -> Iterator[KupischSeries]:
    """Every acyclic Kupisch series of width ``<= max_width`` with entries ``<= max_ell``."""

    def rec(e):
        yield kupisch.validate(e, False)
        if len(e) == max_width:
            return
        for v in range(2, min(e[-1] + 1, max_ell) + 1):
            yield from rec(e + [v])

    yield from rec([1])


def cyclic_series(max_width: int, max_ell: int) -> Iterator[KupischSeries]:
    """Every cyclic Kupisch series up to rotation, width ``<= max_width``, entries in ``[2, max_ell]``."""
    seen = set()
    for m in range(1, max_width + 1):
        for e in itertools.product(range(2, max_ell + 1), repeat=m):
            try:
                s = kupisch.validate(e, True)
            except kupisch.KupischError:
                continue
            if s not in seen:
                seen.add(s)
                yield s


def compare_oracle(series: KupischSeries, d: int, kmax: int = 4) -> List[str]:
    """Mismatches between :mod:`modcat` and the oracle on ``ind M``."""
    cat = ModCat(series, d)
    alg = oracle.NakayamaAlgebra(series, d)
    mods = cat.modules()
    reps = {x: alg.build_module(x) for x in mods}
    out = []
    for x in mods:
        if not alg.relations_vanish(reps[x]):
            out.append(f"relations fail on M{x}")
    for y in mods:
        chain = oracle.syzygy_chain(alg, reps[y], kmax * d)
        if not cat.is_projective(y):
            terms, om = cat.proj_resolution(y)
            got = [alg.canon(tuple(a - 1 for a in p[1:])) for p in terms]
            want = []
            for _, mult, _ in chain[:d]:
                want.extend(v for v, k in sorted(mult.items()) for _ in range(k))
            if got != want:
                out.append(f"resolution of M{y}: {got} vs oracle {want}")
            elif not finalg.is_isomorphic(alg, chain[d - 1][2], reps[om]):
                out.append(f"Ω^d M{y} differs from M{om}")
        for x in mods:
            h = finalg.hom_dim(alg, reps[y], reps[x])
            if h != cat.hom_dim(y, x):
                out.append(f"hom(M{y}, M{x}) = {h} vs {cat.hom_dim(y, x)}")
            ext = oracle.ext_from_chain(alg, chain, reps[x])
            for i, e in enumerate(ext, 1):
                if i % d:
                    if e:
                        out.append(f"Ext^{i}(M{y}, M{x}) = {e} outside dZ")
                elif e != cat.ext_kd_dim(y, x, i // d):
                    out.append(f"Ext^{i}(M{y}, M{x}) = {e} vs {cat.ext_kd_dim(y, x, i // d)}")
    return out


def compare_search(series: KupischSeries, d: int, n: int) -> List[str]:
    """Mismatches between classification, full search and partial search."""
    full = [c.modules for c in cluster.search(series, d, n)]
    part = [c.modules for c in cluster.search(series, d, n, mode="partial")]
    cls = cluster.classify(series, d, n)
    out = []
    tag = f"{series} d={d} n={n}"
    if full != part:
        out.append(f"{tag}: full search {len(full)} vs partial {len(part)}")
    if cls.exists is not None and bool(full) != cls.exists:
        out.append(f"{tag}: search {bool(full)} vs classify {cls.exists}")
    if not series.cyclic and len(full) > 1:
        out.append(f"{tag}: {len(full)} results")
    if cls.subcategory is not None and full and cls.subcategory.modules not in full:
        out.append(f"{tag}: classify subcategory not among search results")
    return out


def run(max_width: int = 6, max_ell: int = 3, max_d: int = 2, max_n: int = 4, oracle_cap: int = 300) -> dict:
    """Run both comparisons on every acyclic series within the budget."""
    problems: List[str] = []
    oracle_runs = search_runs = 0
    for s in acyclic_series(max_width, max_ell):
        for d in range(1, max_d + 1):
            if len(ModCat(s, d).modules()) <= oracle_cap:
                problems.extend(compare_oracle(s, d, kmax=2))
                oracle_runs += 1
            for n in range(2, max_n + 1):
                problems.extend(compare_search(s, d, n))
                search_runs += 1
    return {"ok": not problems, "oracle_instances": oracle_runs, "search_instances": search_runs,
            "problems": problems}
