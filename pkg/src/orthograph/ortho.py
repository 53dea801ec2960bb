"""Orthogonality, orthogonal complements in T_n, and rank-one annihilators."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Mat,
    format_matrix,
    is_upper_triangular,
    kernel_vector_raw,
    product_vanishes,
    triangular_inverse,
    vec_mat,
    mat_vec,
)
from .classify import VertexTag, classify_tn, split_bad1, split_bad2
from .enumeration import Algebra, all_matrices, orthogonality_table, to_array, to_mat
from .errors import BadIndex, InfiniteField, NotTriangular, WrongClass


def are_orthogonal(A: Mat, B: Mat) -> bool:
    """``A @ B == 0`` and ``B @ A == 0``."""
    return product_vanishes(A, B) and product_vanishes(B, A)


def complement_bruteforce(
    A: Mat, algebra: Algebra | str = Algebra.TN, max_size: int | None = None, jobs: int = 1
) -> list[Mat]:
    """All nonzero matrices of the algebra orthogonal to ``A``, by enumeration.

    Output is sorted lexicographically by row-major residues.
    """
    algebra = Algebra.coerce(algebra)
    if not A.ctx.is_finite:
        raise InfiniteField(f"cannot enumerate over {A.ctx}")
    if algebra is Algebra.TN and not is_upper_triangular(A):
        raise NotTriangular(f"{A} is not upper triangular")
    cands = all_matrices(A.n, A.ctx, algebra, max_size)[1:]  # drop the zero matrix
    hit = orthogonality_table(cands, to_array(A)[None], A.ctx.p, jobs=jobs)[:, 0]
    return [to_mat(m, A.ctx) for m in cands[hit]]


@dataclass(frozen=True)
class ComplementRay:
    """The complement of a bad matrix: all multiples ``c0 * generator``.

    ``generator`` is normalised so its free parameter ``c0`` equals 1.
    """

    generator: Mat
    form: str  # "bad1" or "bad2"

    def members(self) -> list[Mat]:
        """Nonzero members over a finite field, ordered like brute force output."""
        ctx = self.generator.ctx
        if not ctx.is_finite:
            raise InfiniteField("a ray over the rationals is infinite")
        return sorted((self.generator.scale(c) for c in range(1, ctx.p)), key=Mat.sort_key)

    def __contains__(self, C: Mat) -> bool:
        g = self.generator
        c0 = C.rows[0][0] if self.form == "bad1" else C.rows[-1][-1]
        return c0 != 0 and g.scale(c0) == C

    def to_json(self) -> dict:
        return {"generator": format_matrix(self.generator), "form": self.form}


def complement_bad1(A: Mat) -> ComplementRay:
    """Closed-form complement of a bad-1 matrix ``[[0, a], [0, A1]]``.

    Generator: first row ``(1, -a A1^{-1})``, everything else zero.
    """
    if classify_tn(A).tag is not VertexTag.BAD1:
        raise WrongClass(f"{A} is not bad-1")
    ctx = A.ctx
    a_bar, A1 = split_bad1(A)
    tail = [ctx.neg(x) for x in vec_mat(a_bar, triangular_inverse(A1).rows, ctx)]
    n = A.n
    first = (ctx.one, *tail)
    rows = (first,) + tuple((ctx.zero,) * n for _ in range(n - 1))
    return ComplementRay(Mat._raw(rows, ctx), "bad1")


def complement_bad2(B: Mat) -> ComplementRay:
    """Closed-form complement of a bad-2 matrix ``[[B1, b], [0, 0]]``.

    Generator: last column ``(-B1^{-1} b, 1)``, everything else zero.
    """
    if classify_tn(B).tag is not VertexTag.BAD2:
        raise WrongClass(f"{B} is not bad-2")
    ctx = B.ctx
    B1, b_bar = split_bad2(B)
    head = [ctx.neg(x) for x in mat_vec(triangular_inverse(B1).rows, b_bar, ctx)]
    col = head + [ctx.one]
    n = B.n
    rows = tuple(tuple(ctx.zero for _ in range(n - 1)) + (col[r],) for r in range(n))
    return ComplementRay(Mat._raw(rows, ctx), "bad2")


def annihilator_rank1(A: Mat, i: int) -> Mat:
    """Rank-one upper triangular ``R = x f^t`` orthogonal to ``A``.

    ``i`` is the 1-based index of a zero diagonal entry of ``A``.  ``x`` is a
    kernel vector of the leading ``i x i`` block padded with zeros; ``f`` is a
    left kernel vector of the trailing block from row/column ``i`` on, padded
    in front.  For ``i != 1`` the first column of ``R`` is zero, for
    ``i != n`` its last row is zero.
    """
    if not is_upper_triangular(A):
        raise NotTriangular(f"{A} is not upper triangular")
    n, ctx, a = A.n, A.ctx, A.rows
    if not 1 <= i <= n:
        raise BadIndex(f"index {i} outside 1..{n}")
    if a[i - 1][i - 1] != 0:
        raise BadIndex(f"diagonal entry ({i},{i}) of A is nonzero")
    lead = [r[:i] for r in a[:i]]
    x_hat = kernel_vector_raw(lead, i, ctx)
    trail_t = [[a[r][c] for r in range(i - 1, n)] for c in range(i - 1, n)]
    f_hat = kernel_vector_raw(trail_t, n - i + 1, ctx)
    x = x_hat + [ctx.zero] * (n - i)
    f = [ctx.zero] * (i - 1) + f_hat
    return outer(x, f, A)


def outer(x, f, like: Mat) -> Mat:
    ctx = like.ctx
    m = ctx.mul
    return Mat._raw(tuple(tuple(m(u, v) for v in f) for u in x), ctx)


__all__ = [
    "ComplementRay",
    "annihilator_rank1",
    "are_orthogonal",
    "complement_bad1",
    "complement_bad2",
    "complement_bruteforce",
]
