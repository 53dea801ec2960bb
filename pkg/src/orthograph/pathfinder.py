"""Constructive paths in orthogonality graphs of upper triangular matrices.

For n >= 3 every pair of vertices of O(T_n) is joined by a path of length at
most 4.  :func:`find_path` builds such a path by case analysis on the
bad/good classes of the two endpoints; every intermediate matrix is checked
before the path is returned.  For n = 2 the graph splits into components
and :func:`find_path_t2` routes inside a component in at most two steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import Mat, format_matrix, is_upper_triangular, kernel_vector_raw
from .classify import (
    VertexClass,
    VertexTag,
    canonical_members_t2,
    classify_component_t2,
    classify_tn,
    is_vertex,
)
from .enumeration import Algebra
from .errors import (
    ConstructionFailed,
    DimensionMismatch,
    DimensionTooSmall,
    Disconnected,
    FieldMismatch,
    NotAVertex,
)
from .ortho import annihilator_rank1, are_orthogonal, complement_bad1, complement_bad2

MAX_LENGTH = 4
MAX_LENGTH_T2 = 2


@dataclass(frozen=True)
class OrthoPath:
    """Vertex sequence plus the case of the construction that produced it."""

    vertices: tuple[Mat, ...]
    case_tag: str

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "case": self.case_tag,
            "vertices": [format_matrix(v) for v in self.vertices],
        }


@dataclass
class PathReport:
    """Outcome of :func:`verify_path`; truthy iff no failures were found."""

    failures: list[tuple[int, str]] = field(default_factory=list)

    def __bool__(self):
        return not self.failures


# cached per-vertex data ----------------------------------------------------


@lru_cache(maxsize=8192)
def _vclass(A: Mat) -> VertexClass:
    return classify_tn(A)


@lru_cache(maxsize=8192)
def _ray_generator(A: Mat) -> Mat:
    tag = _vclass(A).tag
    ray = complement_bad1(A) if tag is VertexTag.BAD1 else complement_bad2(A)
    return ray.generator


@lru_cache(maxsize=8192)
def _middle_annihilator(A: Mat) -> Mat:
    # smallest i in 2..n-1 with a zero (i,i) entry
    i = next(k for k in _vclass(A).zero_diag_positions if 1 < k < A.n)
    return annihilator_rank1(A, i)


def _e1n(like: Mat) -> Mat:
    return _unit_1n(like.n, like.ctx)


@lru_cache(maxsize=64)
def _unit_1n(n, ctx) -> Mat:
    return Mat.unit(n, 1, n, ctx)


def _last_column_matrix(col, like: Mat) -> Mat:
    z = like.ctx.zero
    n = like.n
    return Mat._raw(tuple((z,) * (n - 1) + (col[r],) for r in range(n)), like.ctx)


def _first_row_matrix(row, like: Mat) -> Mat:
    z = like.ctx.zero
    n = like.n
    return Mat._raw((tuple(row),) + tuple((z,) * n for _ in range(n - 1)), like.ctx)


def _dot(u, v, ctx):
    s = ctx.zero
    for a, b in zip(u, v):
        s = ctx.add(s, ctx.mul(a, b))
    return s


def _nonzero(value, case: str, what: str):
    if value == 0:
        raise ConstructionFailed(case, f"{what} vanished")
    return value


# the cases -------------------------------------------------------------------
# Each builder gets endpoints (A, B) already ordered for its case and returns
# the full vertex list from A to B.


def _case_1_1(A, B):
    return [A, _e1n(A), B]


def _case_1_2(A, B):
    return [A, _middle_annihilator(A), _e1n(A), _middle_annihilator(B), B]


def _case_1_3(A, B):
    # A s-good, B ns-good
    return [A, _e1n(A), _middle_annihilator(B), B]


def _case_2_1(A, B):
    ctx, n = A.ctx, A.n
    GA, GB = _ray_generator(A), _ray_generator(B)
    d = kernel_vector_raw([GA.rows[0], GB.rows[0]], n, ctx)
    return [A, GA, _last_column_matrix(d, A), GB, B]


def _case_2_2(A, B):
    ctx, n = A.ctx, A.n
    GA, GB = _ray_generator(A), _ray_generator(B)
    col_a = [r[-1] for r in GA.rows]
    col_b = [r[-1] for r in GB.rows]
    d = kernel_vector_raw([col_a, col_b], n, ctx)
    return [A, GA, _first_row_matrix(d, A), GB, B]


def _case_2_3(A, B):
    # A bad-1, B bad-2; L' sits in rows 1-2, columns n-1..n
    ctx, n = A.ctx, A.n
    GA, GB = _ray_generator(A), _ray_generator(B)
    u = kernel_vector_raw([GA.rows[0][:2]], 2, ctx)
    # L B2 only sees the last two entries of B2's last column
    w = kernel_vector_raw([[GB.rows[n - 2][n - 1], GB.rows[n - 1][n - 1]]], 2, ctx)
    z = ctx.zero
    rows = [[z] * n for _ in range(n)]
    for r in range(2):
        for k in range(2):
            rows[r][n - 2 + k] = ctx.mul(u[r], w[k])
    L = Mat._raw(tuple(tuple(r) for r in rows), ctx)
    return [A, GA, L, GB, B]


def _via_bad1(A, B, R, case):
    # R has zero first column and zero last row; B is bad-1
    ctx, n = A.ctx, A.n
    GB = _ray_generator(B)
    r_block = [row[1:] for row in R.rows[:-1]]
    c = kernel_vector_raw(r_block, n - 1, ctx)
    b0 = _nonzero(GB.rows[0][0], case, "leading entry of the bad-1 ray generator")
    c0 = ctx.neg(ctx.div(_dot(GB.rows[0][1:], c, ctx), b0))
    C = _last_column_matrix([c0] + c, A)
    return [A, R, C, GB, B]


def _via_bad2(A, B, R, case):
    # R has zero first column and zero last row; B is bad-2
    ctx, n = A.ctx, A.n
    GB = _ray_generator(B)
    r_block_t = [[R.rows[r][c] for r in range(n - 1)] for c in range(1, n)]
    c1 = kernel_vector_raw(r_block_t, n - 1, ctx)
    b0 = _nonzero(GB.rows[n - 1][n - 1], case, "trailing entry of the bad-2 ray generator")
    col = [r[-1] for r in GB.rows[:-1]]
    c10 = ctx.neg(ctx.div(_dot(c1, col, ctx), b0))
    return [A, R, _first_row_matrix(c1 + [c10], A), GB, B]


def _case_3_1(A, B):
    return _via_bad1(A, B, _middle_annihilator(A), "3.1")


def _case_3_2(A, B):
    return _via_bad1(A, B, _e1n(A), "3.2")


def _case_3_3(A, B):
    return _via_bad2(A, B, _middle_annihilator(A), "3.3")


def _case_3_4(A, B):
    return _via_bad2(A, B, _e1n(A), "3.4")


S, N, B1, B2 = VertexTag.SGOOD, VertexTag.NSGOOD, VertexTag.BAD1, VertexTag.BAD2

# (class of A, class of B) -> (case, builder, swap endpoints)
_DISPATCH = {
    (S, S): ("1.1", _case_1_1, False),
    (N, N): ("1.2", _case_1_2, False),
    (S, N): ("1.3", _case_1_3, False),
    (N, S): ("1.3", _case_1_3, True),
    (B1, B1): ("2.1", _case_2_1, False),
    (B2, B2): ("2.2", _case_2_2, False),
    (B1, B2): ("2.3", _case_2_3, False),
    (B2, B1): ("2.3", _case_2_3, True),
    (N, B1): ("3.1", _case_3_1, False),
    (S, B1): ("3.2", _case_3_2, False),
    (N, B2): ("3.3", _case_3_3, False),
    (S, B2): ("3.4", _case_3_4, False),
    (B1, N): ("3.1", _case_3_1, True),
    (B1, S): ("3.2", _case_3_2, True),
    (B2, N): ("3.3", _case_3_3, True),
    (B2, S): ("3.4", _case_3_4, True),
}


def _drop_cycles(vertices: list) -> list:
    """Cut out any closed sub-walk, so no vertex repeats (and no self-loop remains)."""
    out: list = []
    for v in vertices:
        if v in out:
            del out[out.index(v) + 1 :]
        else:
            out.append(v)
    return out


def _require_vertex(A: Mat, which: str) -> None:
    if not is_upper_triangular(A) or not is_vertex(A, Algebra.TN):
        raise NotAVertex(f"{which} endpoint {format_matrix(A)} is not a vertex of O(T_{A.n})")


def _require_same_space(A: Mat, B: Mat) -> None:
    if A.ctx != B.ctx:
        raise FieldMismatch(f"{A.ctx} vs {B.ctx}")
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n} vs {B.n}")


def find_path(A: Mat, B: Mat) -> OrthoPath:
    """Path of length <= 4 from ``A`` to ``B`` in O(T_n), n >= 3, over any field."""
    _require_same_space(A, B)
    if A.n < 3:
        raise DimensionTooSmall("find_path needs n >= 3; use find_path_t2 for n = 2")
    _require_vertex(A, "first")
    _require_vertex(B, "second")
    if A == B:
        return OrthoPath((A,), "trivial")
    if are_orthogonal(A, B):
        return OrthoPath((A, B), "direct")
    case, build, swap = _DISPATCH[(_vclass(A).tag, _vclass(B).tag)]
    verts = build(B, A)[::-1] if swap else build(A, B)
    verts = _drop_cycles(verts)
    _check_construction(verts, A, B, case)
    return OrthoPath(tuple(verts), case)


def _check_construction(verts, A, B, case):
    if verts[0] != A or verts[-1] != B:
        raise ConstructionFailed(case, "endpoints moved")
    if len(verts) - 1 > MAX_LENGTH:
        raise ConstructionFailed(case, f"length {len(verts) - 1} exceeds {MAX_LENGTH}")
    for k, V in enumerate(verts[1:-1], start=1):
        if not is_upper_triangular(V) or not is_vertex(V):
            raise ConstructionFailed(case, f"intermediate #{k} {format_matrix(V)} is not a vertex")
    for k in range(len(verts) - 1):
        if not are_orthogonal(verts[k], verts[k + 1]):
            raise ConstructionFailed(
                case, f"edge {k}: {format_matrix(verts[k])} -- {format_matrix(verts[k + 1])} not orthogonal"
            )


def find_path_t2(A: Mat, B: Mat) -> OrthoPath:
    """Path of length <= 2 inside a component of O(T_2)."""
    _require_same_space(A, B)
    if A.n != 2:
        raise DimensionMismatch(f"find_path_t2 needs n = 2, got n = {A.n}")
    _require_vertex(A, "first")
    _require_vertex(B, "second")
    la, lb = classify_component_t2(A), classify_component_t2(B)
    if la != lb:
        raise Disconnected(la, lb)
    if A == B:
        return OrthoPath((A,), "trivial")
    if are_orthogonal(A, B):
        return OrthoPath((A, B), "direct")
    # same family, not adjacent: go through a member of the other family
    first, second = canonical_members_t2(la, A.ctx)
    case = f"t2-{la.family}"
    if second is None:
        raise ConstructionFailed(case, "no second family to route through")
    in_first = A.rows[0][0] != 0
    mid = second if in_first else first
    verts = [A, mid, B]
    if not (are_orthogonal(A, mid) and are_orthogonal(mid, B)):
        raise ConstructionFailed(case, f"{format_matrix(mid)} does not join the endpoints")
    return OrthoPath(tuple(verts), case)


def verify_path(p: OrthoPath) -> PathReport:
    """Re-check a path from scratch; failures are ``(index, reason)`` pairs."""
    report = PathReport()
    verts = p.vertices
    if not verts:
        report.failures.append((0, "empty path"))
        return report
    n = verts[0].n
    for k, V in enumerate(verts):
        if V.n != n or V.ctx != verts[0].ctx:
            report.failures.append((k, "mixed dimension or field"))
        elif not is_upper_triangular(V):
            report.failures.append((k, "not upper triangular"))
        elif not is_vertex(V, Algebra.TN):
            report.failures.append((k, "not a vertex"))
    if report.failures:
        return report
    for k in range(len(verts) - 1):
        if verts[k] == verts[k + 1]:
            report.failures.append((k, "repeated vertex (graph has no loops)"))
        elif not are_orthogonal(verts[k], verts[k + 1]):
            report.failures.append((k, "consecutive vertices not orthogonal"))
    bound = MAX_LENGTH_T2 if n == 2 else MAX_LENGTH
    if p.length > bound:
        report.failures.append((p.length, f"length exceeds {bound}"))
    return report

