"""Vertex predicate, the bad/good taxonomy of T_n and component labels for n = 2."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .algebra import FieldCtx, Mat, Scalar, is_singular, is_upper_triangular
from .enumeration import Algebra
from .errors import DimensionTooSmall, NotAVertex, NotTriangular, Unclassifiable


def is_vertex(A: Mat, algebra: Algebra | str = Algebra.TN) -> bool:
    """Is ``A`` a nonzero two-sided zero divisor of T_n (or M_n)?

    Over a field both reduce to "nonzero and singular"; for T_n singular means
    a zero on the diagonal.
    """
    algebra = Algebra.coerce(algebra)
    if algebra is Algebra.TN:
        if not is_upper_triangular(A):
            raise NotTriangular(f"{A} is not upper triangular")
        rows = A.rows
        return any(any(r) for r in rows) and not all(rows[i][i] for i in range(A.n))
    return not A.is_zero() and is_singular(A)


class VertexTag(str, Enum):
    NOT_VERTEX = "not-vertex"
    BAD1 = "bad1"
    BAD2 = "bad2"
    SGOOD = "sgood"
    NSGOOD = "nsgood"


@dataclass(frozen=True)
class VertexClass:
    """Taxonomy tag plus the 1-based positions of zero diagonal entries."""

    tag: VertexTag
    zero_diag_positions: tuple[int, ...]

    @property
    def is_bad(self) -> bool:
        return self.tag in (VertexTag.BAD1, VertexTag.BAD2)

    @property
    def is_good(self) -> bool:
        return self.tag in (VertexTag.SGOOD, VertexTag.NSGOOD)

    def to_json(self) -> dict:
        return {"class": self.tag.value, "zero_diag": list(self.zero_diag_positions)}


def zero_diag_positions(A: Mat) -> tuple[int, ...]:
    return tuple(i + 1 for i, d in enumerate(A.diagonal()) if d == 0)


def classify_tn(A: Mat) -> VertexClass:
    if A.n < 3:
        raise DimensionTooSmall("the bad/good taxonomy needs n >= 3; use classify_component_t2 for n = 2")
    zeros = zero_diag_positions(A)
    n = A.n
    if not is_vertex(A, Algebra.TN):
        tag = VertexTag.NOT_VERTEX
    elif zeros == (1,):
        tag = VertexTag.BAD1
    elif zeros == (n,):
        tag = VertexTag.BAD2
    elif zeros[0] == 1 and zeros[-1] == n:
        tag = VertexTag.SGOOD
    else:
        tag = VertexTag.NSGOOD
    return VertexClass(tag, zeros)


def split_bad1(A: Mat) -> tuple[tuple, Mat]:
    """Blocks ``(a_bar, A1)`` of a bad-1 matrix ``[[0, a_bar], [0, A1]]``."""
    a_bar = A.rows[0][1:]
    A1 = Mat._raw(tuple(r[1:] for r in A.rows[1:]), A.ctx)
    return a_bar, A1


def split_bad2(B: Mat) -> tuple[Mat, tuple]:
    """Blocks ``(B1, b_bar)`` of a bad-2 matrix ``[[B1, b_bar], [0, 0]]``."""
    B1 = Mat._raw(tuple(r[:-1] for r in B.rows[:-1]), B.ctx)
    b_bar = tuple(r[-1] for r in B.rows[:-1])
    return B1, b_bar


# component labels for n = 2 ------------------------------------------------

FAMILIES = ("V1", "V2", "V3", "V4", "V5", "V6")


@dataclass(frozen=True)
class ComponentLabel:
    family: str
    alpha: Scalar | None = None
    beta: Scalar | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown component family {self.family!r}")
        needs_alpha = self.family in ("V4", "V5", "V6")
        if needs_alpha != (self.alpha is not None) or (self.family == "V6") != (self.beta is not None):
            raise ValueError(f"wrong parameters for {self.family}")
        for s in (self.alpha, self.beta):
            if s is not None and not s:
                raise ValueError("component parameters must be nonzero")
        if self.family == "V6" and self.beta < self.alpha:
            # V6(a, b) and V6(b, a) are the same set
            a, b = self.alpha, self.beta
            object.__setattr__(self, "alpha", b)
            object.__setattr__(self, "beta", a)

    def __str__(self):
        params = [str(s) for s in (self.alpha, self.beta) if s is not None]
        return self.family + (f"({','.join(params)})" if params else "")

    def to_json(self) -> dict:
        out = {"component": self.family}
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        if self.beta is not None:
            out["beta"] = str(self.beta)
        return out


def _require_2x2_vertex(A: Mat, algebra: Algebra) -> None:
    if A.n != 2:
        raise DimensionTooSmall(f"component labels exist only for n = 2, got n = {A.n}")
    if not is_vertex(A, algebra):
        raise NotAVertex(f"{A} is not a vertex of O({algebra.value.upper()[0]}_2)")


def classify_component_m2(A: Mat) -> ComponentLabel:
    """Component of ``A`` in the orthogonality graph of M_2."""
    _require_2x2_vertex(A, Algebra.MN)
    ctx = A.ctx
    (a, b), (c, d) = A.rows

    def s(x):
        return Scalar(x, ctx)

    pattern = (a != 0, b != 0, c != 0, d != 0)
    if not b and not c:
        return ComponentLabel("V1")
    if pattern == (False, True, False, False):
        return ComponentLabel("V3")
    if pattern == (False, False, True, False):
        return ComponentLabel("V2")
    if pattern == (True, True, False, False):
        return ComponentLabel("V4", s(ctx.div(b, a)))
    if pattern == (False, True, False, True):
        # (0, d'; 0, -d'/alpha)
        return ComponentLabel("V4", s(ctx.neg(ctx.div(b, d))))
    if pattern == (False, False, True, True):
        return ComponentLabel("V5", s(ctx.div(d, c)))
    if pattern == (True, False, True, False):
        # (d', 0; -d'/alpha, 0)
        return ComponentLabel("V5", s(ctx.neg(ctx.div(a, c))))
    if all(pattern):
        # (-alpha x, x; -alpha beta x, beta x)
        return ComponentLabel("V6", s(ctx.neg(ctx.div(a, b))), s(ctx.div(d, b)))
    raise Unclassifiable(f"{A} matches no component of O(M_2) over {ctx}")


def classify_component_t2(A: Mat) -> ComponentLabel:
    """Component of ``A`` in the orthogonality graph of T_2."""
    if A.n == 2 and not is_upper_triangular(A):
        raise NotTriangular(f"{A} is not upper triangular")
    _require_2x2_vertex(A, Algebra.TN)
    label = classify_component_m2(A)
    if label.family not in ("V1", "V3", "V4"):
        raise Unclassifiable(f"{A} landed in {label}, which has no triangular members")
    return label


def canonical_members_t2(label: ComponentLabel, ctx: FieldCtx) -> tuple[Mat, Mat | None]:
    """One representative of each of the (up to) two families of a T_2 component."""
    o = ctx.one
    z = ctx.zero
    if label.family == "V1":
        return Mat._raw(((o, z), (z, z)), ctx), Mat._raw(((z, z), (z, o)), ctx)
    if label.family == "V3":
        return Mat._raw(((z, o), (z, z)), ctx), None
    if label.family == "V4":
        al = label.alpha.value
        return (
            Mat._raw(((o, al), (z, z)), ctx),
            Mat._raw(((z, o), (z, ctx.neg(ctx.inv(al)))), ctx),
        )
    raise ValueError(f"{label} is not a component of O(T_2)")
