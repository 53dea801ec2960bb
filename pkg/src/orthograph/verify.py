"""Exhaustive checks over finite fields, as run by ``orthograph verify``.

Each ``check_*`` function returns a list of :class:`Check` lines.  Reports
contain no timings so that repeated runs are byte-identical.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import FieldCtx, Mat, is_upper_triangular, rank
from .classify import VertexTag, classify_component_m2, classify_component_t2, classify_tn, zero_diag_positions
from .enumeration import Algebra
from .errors import ConstructionFailed, Disconnected, InfiniteField
from .graph import OrthoGraph, bfs_distance, build_graph, components, diameter, distance_matrix
from .ortho import annihilator_rank1, are_orthogonal, complement_bad1, complement_bad2, complement_bruteforce
from .pathfinder import find_path, find_path_t2, verify_path


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str

    def __str__(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def witnesses(n: int, ctx: FieldCtx) -> tuple[Mat, Mat]:
    """The pair ``(I - E_11, J_n)`` at distance exactly 4."""
    return Mat.identity(n, ctx) - Mat.unit(n, 1, 1, ctx), Mat.jordan(n, ctx)


def vertex_count_formula(n: int, q: int) -> int:
    """Number of nonzero singular upper triangular n x n matrices over GF(q)."""
    return q ** (n * (n + 1) // 2) - (q - 1) ** n * q ** (n * (n - 1) // 2) - 1


def _finite(ctx: FieldCtx) -> None:
    if not ctx.is_finite:
        raise InfiniteField("verification enumerates matrices; pick a prime field")


# n = 2 ---------------------------------------------------------------------


def _expected_diameter(label, q: int) -> int:
    small = q == 2
    if label.family in ("V1", "V4", "V5"):
        return 1 if small else 2
    if label.family in ("V2", "V3"):
        return 0 if small else 1
    # V6: one family when alpha == beta
    if label.alpha == label.beta:
        return 0 if small else 1
    return 2


def _label_checks(g: OrthoGraph, classify, tag: str) -> list[Check]:
    verts = g.vertices
    labels = [classify(v) for v in verts]
    comps = components(g)
    by_label = defaultdict(list)
    for k, lab in enumerate(labels):
        by_label[lab].append(k)
    label_sets = sorted(sorted(v) for v in by_label.values())
    match = label_sets == sorted(comps)
    rep = diameter(g)
    wrong = []
    for comp, d in zip(comps, rep.component_diameters):
        lab = labels[comp[0]]
        if d != _expected_diameter(lab, g.ctx.p):
            wrong.append(f"{lab}:{d}")
    diams = {str(labels[c[0]]): d for c, d in zip(comps, rep.component_diameters)}
    out = [
        Check(f"{tag}.vertices", True, f"{g.order} vertices over {g.ctx}"),
        Check(
            f"{tag}.components",
            match,
            f"{len(comps)} components, {len(by_label)} label classes, " + ("identical" if match else "differ"),
        ),
        Check(
            f"{tag}.diameters",
            not wrong,
            ", ".join(f"{k}:{v}" for k, v in diams.items()) if not wrong else "mismatch " + ", ".join(wrong),
        ),
    ]
    return out


def check_m2_components(ctx: FieldCtx, jobs: int = 1) -> list[Check]:
    _finite(ctx)
    g = build_graph(Algebra.MN, 2, ctx, jobs=jobs)
    return _label_checks(g, classify_component_m2, "lemma1")


def check_t2_components(ctx: FieldCtx, jobs: int = 1) -> list[Check]:
    _finite(ctx)
    g = build_graph(Algebra.TN, 2, ctx, jobs=jobs)
    checks = _label_checks(g, classify_component_t2, "lemma2")
    dist = distance_matrix(g)
    verts = g.vertices
    bad = 0
    pairs = 0
    for i, A in enumerate(verts):
        for j, B in enumerate(verts):
            pairs += 1
            try:
                p = find_path_t2(A, B)
            except Disconnected:
                bad += dist[i, j] != -1
                continue
            if not verify_path(p) or dist[i, j] == -1 or not dist[i, j] <= p.length <= 2:
                bad += 1
    checks.append(Check("lemma2.paths", bad == 0, f"{pairs} ordered pairs, {bad} disagreements with BFS"))
    return checks


# n >= 3 --------------------------------------------------------------------


def check_closed_form_complements(ctx: FieldCtx, n: int, jobs: int = 1) -> list[Check]:
    _finite(ctx)
    g = build_graph(Algebra.TN, n, ctx, jobs=jobs)
    counts = Counter()
    bad = []
    for A in g.vertices:
        tag = classify_tn(A).tag
        if tag is VertexTag.BAD1:
            ray = complement_bad1(A)
        elif tag is VertexTag.BAD2:
            ray = complement_bad2(A)
        else:
            continue
        counts[tag.value] += 1
        if ray.members() != complement_bruteforce(A, Algebra.TN, jobs=jobs):
            bad.append(str(A))
    ok = not bad and counts["bad1"] > 0 and counts["bad2"] > 0
    detail = f"{counts['bad1']} bad-1 and {counts['bad2']} bad-2 vertices, {len(bad)} mismatches"
    a_hat, b_hat = witnesses(n, ctx)
    e11 = sorted((Mat.unit(n, 1, 1, ctx, c) for c in range(1, ctx.p)), key=Mat.sort_key)
    e1n = sorted((Mat.unit(n, 1, n, ctx, c) for c in range(1, ctx.p)), key=Mat.sort_key)
    wa = complement_bruteforce(a_hat, Algebra.TN, jobs=jobs) == e11
    wb = complement_bruteforce(b_hat, Algebra.TN, jobs=jobs) == e1n
    return [
        Check("lemma3.closed_form", ok, detail),
        Check("lemma3.witness_a", wa, "complement of I - E11 is the nonzero multiples of E11"),
        Check("lemma3.witness_b", wb, f"complement of J{n} is the nonzero multiples of E1{n}"),
    ]


def annihilator_defects(A: Mat, i: int) -> list[str]:
    R = annihilator_rank1(A, i)
    n = A.n
    out = []
    if rank(R) != 1:
        out.append("rank != 1")
    if not is_upper_triangular(R):
        out.append("not upper triangular")
    if not are_orthogonal(A, R):
        out.append("not orthogonal")
    if i != 1 and any(R.rows[r][0] for r in range(n)):
        out.append("first column nonzero")
    if i != n and any(R.rows[n - 1]):
        out.append("last row nonzero")
    return out


def check_annihilators(ctx: FieldCtx, n: int, jobs: int = 1) -> list[Check]:
    _finite(ctx)
    g = build_graph(Algebra.TN, n, ctx, jobs=jobs)
    tried = 0
    bad = 0
    for A in g.vertices:
        for i in zero_diag_positions(A):
            tried += 1
            bad += bool(annihilator_defects(A, i))
    return [Check("lemma4.annihilators", bad == 0, f"{tried} (vertex, zero index) pairs, {bad} defective")]


def _sweep(args):
    p, n, arr, dist, lo, hi = args
    ctx = FieldCtx(p)
    verts = [Mat._raw(tuple(tuple(int(x) for x in row) for row in m), ctx) for m in arr]
    pairs = 0
    failures = 0
    cases = Counter()
    for i in range(lo, hi):
        A = verts[i]
        for j, B in enumerate(verts):
            pairs += 1
            try:
                path = find_path(A, B)
            except ConstructionFailed:
                failures += 1
                continue
            cases[path.case_tag] += 1
            if not verify_path(path) or not 0 <= dist[i, j] <= path.length <= 4:
                failures += 1
    return pairs, failures, cases


def exhaustive_paths(g: OrthoGraph, dist: np.ndarray, jobs: int = 1) -> tuple[int, int, Counter]:
    """Run :func:`find_path` on every ordered vertex pair; returns (pairs, failures, cases)."""
    m = g.order
    k = max(1, jobs)
    bounds = [(m * t // k, m * (t + 1) // k) for t in range(k)]
    tasks = [(g.ctx.p, g.n, g.array, dist, lo, hi) for lo, hi in bounds if hi > lo]
    if jobs <= 1:
        results = [_sweep(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep, tasks))
    pairs = sum(r[0] for r in results)
    failures = sum(r[1] for r in results)
    cases = Counter()
    for r in results:
        cases.update(r[2])
    return pairs, failures, cases


def check_diameter_and_paths(ctx: FieldCtx, n: int, jobs: int = 1) -> list[Check]:
    _finite(ctx)
    g = build_graph(Algebra.TN, n, ctx, jobs=jobs)
    expected = vertex_count_formula(n, ctx.p)
    dist = distance_matrix(g)
    rep = diameter(g, dist)
    a_hat, b_hat = witnesses(n, ctx)
    d = bfs_distance(g, g.index_of(a_hat), g.index_of(b_hat))
    pairs, failures, cases = exhaustive_paths(g, dist, jobs)
    case_txt = " ".join(f"{c}:{cases[c]}" for c in sorted(cases))
    return [
        Check("theorem1.vertex_count", g.order == expected, f"{g.order} enumerated, formula {expected}"),
        Check("theorem1.diameter", rep.connected and rep.diameter == 4, str(rep)),
        Check("theorem1.witness", d == 4, f"d(I - E11, J{n}) = {d}"),
        Check("theorem1.paths", failures == 0, f"{pairs} ordered pairs checked, {failures} failures"),
        Check("theorem1.cases", True, case_txt),
    ]


SUITES = {
    "lemma1": lambda ctx, n, jobs: check_m2_components(ctx, jobs),
    "lemma2": lambda ctx, n, jobs: check_t2_components(ctx, jobs),
    "lemma3": check_closed_form_complements,
    "lemma4": check_annihilators,
    "theorem1": check_diameter_and_paths,
}
