"""Command-line interface.

Exit codes: 0 success, 1 mathematical error (not a vertex, disconnected, ...),
2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .algebra import FieldCtx, Mat, format_matrix
from .classify import (
    VertexClass,
    classify_component_m2,
    classify_component_t2,
    classify_tn,
    is_vertex,
    zero_diag_positions,
    VertexTag,
)
from .enumeration import Algebra
from .graph import build_graph, components, diameter, distance_matrix, export, shortest_path
from .ortho import complement_bad1, complement_bad2, complement_bruteforce
from .pathfinder import OrthoPath, find_path, find_path_t2
from .verify import SUITES

USAGE_ERRORS = (
    errors.ParseError,
    errors.TooLarge,
    errors.InfiniteField,
    errors.UnsupportedFormat,
    errors.FieldMismatch,
    errors.DimensionMismatch,
)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default="2", help="prime p or 'rational' (default 2)")
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument("--algebra", choices=["tn", "mn"], default="tn")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers; results do not depend on it")
    p.add_argument("--max-size", type=int, default=None, help="bound on enumerated matrices (default 1e8)")
    p.add_argument("--file", default=None, help="read matrices from a file, one per line")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="orthograph", description="Orthogonality graphs of triangular matrix algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="vertex class or n=2 component label")
    c.add_argument("matrix", nargs="?")

    c = sub.add_parser("complement", parents=[common], help="orthogonal complement of a matrix")
    c.add_argument("matrix", nargs="?")

    c = sub.add_parser("path", parents=[common], help="path between two vertices")
    c.add_argument("matrices", nargs="*")
    c.add_argument("--shortest", action="store_true", help="BFS-shortest path (finite fields only)")

    c = sub.add_parser("graph", parents=[common], help="enumerate a whole graph")
    what = c.add_mutually_exclusive_group(required=True)
    what.add_argument("--components", action="store_true")
    what.add_argument("--diameter", action="store_true")
    what.add_argument("--export", choices=["dot", "json"])

    c = sub.add_parser("verify", parents=[common], help="run an exhaustive check suite")
    c.add_argument("suite", choices=sorted(SUITES))
    return ap


def _matrices(args, ctx: FieldCtx, given: list[str]) -> list[Mat]:
    texts = list(given)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            texts += [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    mats = [Mat.parse(t, ctx) for t in texts]
    if args.n is not None:
        for m in mats:
            if m.n != args.n:
                raise UsageError(f"matrix {format_matrix(m)} is {m.n}x{m.n} but --n {args.n} was given")
    return mats


def _one(args, ctx) -> Mat:
    mats = _matrices(args, ctx, [args.matrix] if args.matrix else [])
    if len(mats) != 1:
        raise UsageError(f"expected one matrix, got {len(mats)}")
    return mats[0]


def _emit(out, args, text: str, doc) -> None:
    if args.format == "json":
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(text + "\n")


def cmd_classify(args, ctx, out) -> int:
    A = _one(args, ctx)
    alg = Algebra(args.algebra)
    if alg is Algebra.TN and A.n >= 3:
        vc = classify_tn(A)
        _emit(out, args, vc.tag.value, vc.to_json())
        return 0
    if A.n == 2 and is_vertex(A, alg):
        label = classify_component_t2(A) if alg is Algebra.TN else classify_component_m2(A)
        _emit(out, args, str(label), label.to_json())
        return 0
    if alg is Algebra.MN and A.n >= 3 and is_vertex(A, alg):
        _emit(out, args, "vertex", {"class": "vertex", "zero_diag": list(zero_diag_positions(A))})
        return 0
    is_vertex(A, alg)  # raises NotTriangular for non-triangular input to tn
    vc = VertexClass(VertexTag.NOT_VERTEX, zero_diag_positions(A))
    _emit(out, args, vc.tag.value, vc.to_json())
    return 0


def cmd_complement(args, ctx, out) -> int:
    A = _one(args, ctx)
    alg = Algebra(args.algebra)
    if alg is Algebra.TN and A.n >= 3:
        tag = classify_tn(A).tag
        if tag in (VertexTag.BAD1, VertexTag.BAD2):
            ray = complement_bad1(A) if tag is VertexTag.BAD1 else complement_bad2(A)
            _emit(out, args, f"{ray.form} {format_matrix(ray.generator)}", ray.to_json())
            return 0
    mats = complement_bruteforce(A, alg, max_size=args.max_size, jobs=args.jobs)
    texts = [format_matrix(m) for m in mats]
    if args.format == "json":
        out.write(json.dumps({"count": len(texts), "complement": texts}) + "\n")
    else:
        out.writelines(t + "\n" for t in texts)
    return 0


def cmd_path(args, ctx, out) -> int:
    mats = _matrices(args, ctx, args.matrices)
    if len(mats) != 2:
        raise UsageError(f"expected two matrices, got {len(mats)}")
    A, B = mats
    if args.algebra != "tn":
        raise UsageError("paths are only constructed in T_n")
    if args.shortest:
        if not ctx.is_finite:
            raise UsageError("--shortest needs a finite field")
        for M in (A, B):
            if not is_vertex(M, Algebra.TN):
                raise errors.NotAVertex(f"{format_matrix(M)} is not a vertex")
        g = build_graph(Algebra.TN, A.n, ctx, max_size=args.max_size, jobs=args.jobs)
        idx = shortest_path(g, g.index_of(A), g.index_of(B))
        if idx is None:
            raise errors.Disconnected(format_matrix(A), format_matrix(B))
        path = OrthoPath(tuple(g.vertex(k) for k in idx), "shortest")
    elif A.n == 2:
        path = find_path_t2(A, B)
    else:
        path = find_path(A, B)
    if args.format == "json":
        out.write(json.dumps(path.to_json()) + "\n")
    else:
        out.writelines(format_matrix(v) + "\n" for v in path.vertices)
    return 0


def _label_for(g, k):
    A = g.vertex(k)
    if g.n != 2:
        return None
    return classify_component_t2(A) if g.algebra is Algebra.TN else classify_component_m2(A)


def cmd_graph(args, ctx, out) -> int:
    if args.n is None:
        raise UsageError("graph needs --n")
    if not ctx.is_finite:
        raise errors.InfiniteField("graph enumeration needs a prime field, not 'rational'")
    g = build_graph(args.algebra, args.n, ctx, max_size=args.max_size, jobs=args.jobs)
    if args.export:
        out.write(export(g, args.export).decode())
        return 0
    dist = distance_matrix(g)
    rep = diameter(g, dist)
    comps = components(g)
    if args.diameter:
        doc = {
            "connected": rep.connected,
            "diameter": rep.diameter if rep.connected else None,
            "component_diameters": list(rep.component_diameters),
        }
        _emit(out, args, str(rep), doc)
        return 0
    rows = []
    for k, (comp, d) in enumerate(zip(comps, rep.component_diameters)):
        label = _label_for(g, comp[0])
        rows.append(
            {
                "index": k,
                "size": len(comp),
                "diameter": d,
                "label": label.to_json() if label else None,
                "vertices": [format_matrix(g.vertex(v)) for v in comp],
            }
        )
    if args.format == "json":
        out.write(json.dumps({"components": rows}) + "\n")
    else:
        for r, comp in zip(rows, comps):
            label = _label_for(g, comp[0])
            tag = f" {label}" if label else ""
            out.write(f"component {r['index']}{tag}: size {r['size']}, diameter {r['diameter']}\n")
            out.writelines(f"  {v}\n" for v in r["vertices"])
    return 0


def cmd_verify(args, ctx, out) -> int:
    if not ctx.is_finite:
        raise errors.InfiniteField("verify enumerates matrices; 'rational' is not allowed")
    n = args.n if args.n is not None else (2 if args.suite in ("lemma1", "lemma2") else 3)
    if args.suite in ("lemma1", "lemma2") and n != 2:
        raise UsageError(f"{args.suite} is about n = 2")
    if args.suite not in ("lemma1", "lemma2") and n < 3:
        raise UsageError(f"{args.suite} needs n >= 3")
    checks = SUITES[args.suite](ctx, n, args.jobs)
    out.write(f"verify {args.suite} over {ctx}, n = {n}\n")
    for c in checks:
        out.write(f"{c}\n")
    ok = all(c.ok for c in checks)
    out.write(f"{'PASS' if ok else 'FAIL'} {args.suite}: {sum(c.ok for c in checks)}/{len(checks)} checks\n")
    return 0 if ok else 3


COMMANDS = {
    "classify": cmd_classify,
    "complement": cmd_complement,
    "path": cmd_path,
    "graph": cmd_graph,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        ctx = FieldCtx.parse(args.field)
    except (ValueError, errors.ParseError) as exc:
        err.write(f"ParseError: {exc}\n")
        return 2
    if args.jobs < 1:
        err.write("UsageError: --jobs must be at least 1\n")
        return 2
    try:
        return COMMANDS[args.command](args, ctx, out)
    except (UsageError, OSError, *USAGE_ERRORS) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    except errors.OrthoError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1


def run() -> None:
    sys.exit(main())
