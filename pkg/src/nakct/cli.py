"""Command-line front end.

Exit codes: 0 for a positive answer (or a plain computation), 1 for a
mathematical negative, 2 for usage and validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import cluster, kupisch, modcat, oracle
from .kupisch import KupischError, KupischSeries
from .modcat import ModCat

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _series(text: str) -> KupischSeries:
    return kupisch.parse(text)


def _index(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"cannot parse index {text!r}") from exc


def _module(cat: ModCat, text: str) -> tuple:
    x = _index(text)
    if len(x) != cat.d + 1 or not cat.is_module(x):
        raise UsageError(f"{x} is not a module index for {cat.series} with d={cat.d}")
    return cat.canon(x)


def _load_set(path: str) -> cluster.ModuleSet:
    with open(path) as fh:
        return cluster.ModuleSet.from_json(json.load(fh))


def _dump(obj, out: Optional[str]) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def cmd_validate(a):
    s = _series(a.series)
    return {**s.to_json(), "text": str(s), "shape": kupisch.classify_shape(s).to_json()}, EXIT_YES


def cmd_classify(a):
    c = cluster.classify(_series(a.series), a.d, a.n)
    return c.to_json(), EXIT_NO if c.exists is False else EXIT_YES


def cmd_check(a):
    cset = _load_set(a.subcat)
    if a.series is not None:
        s = _series(a.series)
        if s != cset.series or (a.d is not None and a.d != cset.d):
            raise UsageError("--series/--d disagree with the subcategory file")
    d = cset.d if a.d is None else a.d
    cat = ModCat(cset.series, d)
    fn = cluster.check_full if a.mode == "full" else cluster.check_partial
    v = fn(cat, cset.modules, a.n)
    return v.to_json(), EXIT_YES if v.accepted else EXIT_NO


def cmd_search(a):
    found = cluster.search(_series(a.series), a.d, a.n, mode=a.mode)
    return {"n": a.n, "mode": a.mode, "results": [c.to_json() for c in found]}, EXIT_YES if found else EXIT_NO


def cmd_ext(a):
    cat = ModCat(_series(a.series), a.d)
    y, x = _module(cat, a.y), _module(cat, a.x)
    dim = cat.ext_kd_dim(y, x, a.k)
    return {"y": list(y), "x": list(x), "degree": a.k * a.d, "dim": dim}, EXIT_YES


def cmd_resolve(a):
    cat = ModCat(_series(a.series), a.d)
    x = _module(cat, a.x)
    if cat.is_projective(x):
        return {"x": list(x), "projective": True, "terms": [], "omega_d": None}, EXIT_YES
    terms, om = cat.proj_resolution(x)
    return {"x": list(x), "projective": False, "terms": [list(t) for t in terms],
            "omega_d": list(om) if om else None}, EXIT_YES


def cmd_tau(a):
    cat = ModCat(_series(a.series), a.d)
    x = _module(cat, a.x)
    y = cat.tau_nd_inv(x, a.n) if a.inverse else cat.tau_nd(x, a.n)
    return {"x": list(x), "n": a.n, "inverse": a.inverse, "result": list(y) if y else None}, EXIT_YES


def cmd_glue(a):
    sa, sb = _series(a.a), _series(a.b)
    out = {"series": kupisch.glue(sa, sb).to_json()}
    if a.subcat_a or a.subcat_b:
        if not (a.subcat_a and a.subcat_b):
            raise UsageError("--subcat-a and --subcat-b go together")
        ca, cb = _load_set(a.subcat_a), _load_set(a.subcat_b)
        if ca.series != sa or cb.series != sb:
            raise UsageError("subcategory files disagree with --a/--b")
        out["subcategory"] = cluster.glue_subcats(ca, cb).to_json()
    return out, EXIT_YES


def cmd_deglue(a):
    s = _series(a.series)
    if s.cyclic:
        found = kupisch.self_deglue_all(s)
        if not found:
            return {"self_deglued": []}, EXIT_NO
        return {"self_deglued": [{"series": list(p.series.entries), "rotation": p.offset} for p in found]}, EXIT_YES
    try:
        pieces, bridges = kupisch.deglue_all(s, a.d, a.n)
    except kupisch.NotDecomposable as exc:
        return {"decomposable": False, "witness": exc.witness, "pattern": exc.pattern}, EXIT_NO
    return {"decomposable": True, "pieces": [list(p.entries) for p in pieces],
            "bridges": [list(b) for b in bridges]}, EXIT_YES


def cmd_arquiver(a):
    cat = ModCat(_series(a.series), a.d)
    if a.format == "json":
        return modcat.ar_to_json(cat), EXIT_YES
    marked = _load_set(a.highlight).modules if a.highlight else ()
    return modcat.ar_to_dot(cat, marked), EXIT_YES


def cmd_verify(a):
    from . import sweep

    report = sweep.run(max_width=a.max_width, max_ell=a.max_ell, max_d=a.max_d, max_n=a.max_n)
    return report, EXIT_YES if report["ok"] else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nakct", description=__doc__.splitlines()[0])
    p.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_text):
        q = sub.add_parser(name, help=help_text)
        q.set_defaults(fn=fn)
        return q

    q = add("validate", cmd_validate, "validate a Kupisch series and report its shape")
    q.add_argument("--series", required=True)

    q = add("classify", cmd_classify, "decide existence of an nd𝐙-cluster-tilting subcategory")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)

    q = add("check", cmd_check, "check a subcategory file")
    q.add_argument("--series")
    q.add_argument("--d", type=int)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--subcat", required=True)
    q.add_argument("--mode", choices=["full", "partial"], default="full")

    q = add("search", cmd_search, "brute-force search for nd𝐙-cluster-tilting subcategories")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mode", choices=["full", "partial"], default="full")

    q = add("ext", cmd_ext, "dim Ext^{kd}(M(y), M(x))")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--y", required=True)
    q.add_argument("--x", required=True)
    q.add_argument("--k", type=int, default=1)

    q = add("resolve", cmd_resolve, "projective resolution terms and Ω^d")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--x", required=True)

    q = add("tau", cmd_tau, "τ_nd or its inverse")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--x", required=True)
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--inverse", action="store_true")

    q = add("glue", cmd_glue, "glue two acyclic series, optionally with subcategories")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--subcat-a")
    q.add_argument("--subcat-b")

    q = add("deglue", cmd_deglue, "split a series into homogeneous pieces")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--n", type=int)

    q = add("arquiver", cmd_arquiver, "export the AR quiver of M")
    q.add_argument("--series", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--format", choices=["dot", "json"], default="dot")
    q.add_argument("--highlight", help="subcategory file whose members are colored")

    q = add("verify", cmd_verify, "oracle and search cross-checks over a bounded sweep")
    q.add_argument("--max-width", type=int, default=6)
    q.add_argument("--max-ell", type=int, default=3)
    q.add_argument("--max-d", type=int, default=2)
    q.add_argument("--max-n", type=int, default=4)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    for name in ("d", "n"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            sys.stderr.write(f"error: --{name} must be positive\n")
            return EXIT_USAGE
    try:
        payload, code = args.fn(args)
    except (UsageError, KupischError, ValueError, OSError, json.JSONDecodeError, oracle.CapExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    _dump(payload, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
