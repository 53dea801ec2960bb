"""Enumeration of T_n / M_n over small prime fields, vectorised with numpy."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import numpy as np

from .algebra import FieldCtx, Mat
from .errors import InfiniteField, TooLarge

DEFAULT_MAX_SIZE = 10**8


class Algebra(str, Enum):
    TN = "tn"
    MN = "mn"

    @classmethod
    def coerce(cls, value) -> "Algebra":
        return value if isinstance(value, cls) else cls(str(value).lower())


def free_positions(n: int, algebra: Algebra) -> list[tuple[int, int]]:
    algebra = Algebra.coerce(algebra)
    if algebra is Algebra.TN:
        return [(i, j) for i in range(n) for j in range(i, n)]
    return [(i, j) for i in range(n) for j in range(n)]


def enumeration_size(n: int, ctx: FieldCtx, algebra: Algebra) -> int:
    if not ctx.is_finite:
        raise InfiniteField(f"cannot enumerate matrices over {ctx}")
    return ctx.p ** len(free_positions(n, algebra))


def check_size(n: int, ctx: FieldCtx, algebra: Algebra, max_size: int | None = None) -> int:
    size = enumeration_size(n, ctx, algebra)
    bound = DEFAULT_MAX_SIZE if max_size is None else max_size
    if size > bound:
        raise TooLarge(size, bound, f"{Algebra.coerce(algebra).value} n={n} over {ctx}")
    return size


def all_matrices(n: int, ctx: FieldCtx, algebra: Algebra, max_size: int | None = None) -> np.ndarray:
    """Every matrix of the algebra as an ``(N, n, n)`` int64 array.

    Rows come in lexicographic order of the row-major entries.
    """
    size = check_size(n, ctx, algebra, max_size)
    pos = free_positions(n, algebra)
    k = len(pos)
    p = ctx.p
    # digit d of the index (most significant first) fills free position d
    idx = np.arange(size, dtype=np.int64)
    out = np.zeros((size, n, n), dtype=np.int64)
    for d, (i, j) in enumerate(pos):
        out[:, i, j] = (idx // p ** (k - 1 - d)) % p
    return out


def _assert_int64_safe(n: int, p: int) -> None:
    # n * (p-1)^2 must fit a signed 64-bit accumulator
    if n * (p - 1) ** 2 >= 2**62:
        raise TooLarge(n * (p - 1) ** 2, 2**62, "int64 accumulation")


def products_vanish(left: np.ndarray, right: np.ndarray, p: int) -> np.ndarray:
    """Boolean ``(len(left), len(right))`` table of ``L @ R == 0 (mod p)``."""
    a, n, _ = left.shape
    b = right.shape[0]
    _assert_int64_safe(n, p)
    # stack rows of every L against columns of every R in one product
    lhs = left.reshape(a * n, n)
    rhs = right.transpose(1, 0, 2).reshape(n, b * n)
    prod = (lhs @ rhs) % p
    return ~prod.reshape(a, n, b, n).any(axis=(1, 3))


def orthogonality_table(
    left: np.ndarray, right: np.ndarray, p: int, jobs: int = 1, chunk: int = 256
) -> np.ndarray:
    """``T[a, b]`` is True iff ``left[a]`` and ``right[b]`` are orthogonal.

    The left operand is split into row chunks; ``jobs`` threads evaluate them
    and the result is assembled in chunk order, so it does not depend on
    ``jobs``.
    """
    starts = list(range(0, left.shape[0], chunk))

    def block(s: int) -> np.ndarray:
        part = left[s : s + chunk]
        return products_vanish(part, right, p) & products_vanish(right, part, p).T

    if not starts:
        return np.zeros((0, right.shape[0]), dtype=bool)
    if jobs <= 1:
        parts = [block(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(block, starts))
    return np.concatenate(parts, axis=0)


def singular_mask(mats: np.ndarray, p: int, algebra: Algebra) -> np.ndarray:
    """Which matrices are singular (not invertible) over GF(p)."""
    algebra = Algebra.coerce(algebra)
    n = mats.shape[1]
    if algebra is Algebra.TN:
        return (np.diagonal(mats, axis1=1, axis2=2) == 0).any(axis=1)
    return _det_mod_p(mats, p) == 0


def _det_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p by batched Gaussian elimination."""
    m = mats.copy() % p
    N, n, _ = m.shape
    det = np.ones(N, dtype=np.int64)
    inv_table = np.zeros(p, dtype=np.int64)
    for v in range(1, p):
        inv_table[v] = pow(v, -1, p)
    rows = np.arange(N)
    for c in range(n):
        sub = m[:, c:, c]
        has = (sub != 0).any(axis=1)
        piv = c + np.argmax(sub != 0, axis=1)
        det = np.where(has, det, 0)
        swap = has & (piv != c)
        # swap pivot row into place; each swap flips the sign
        top = m[rows, c].copy()
        m[rows, c] = m[rows, piv]
        m[rows, piv] = top
        det = np.where(swap, (-det) % p, det)
        pv = m[:, c, c]
        det = det * pv % p
        inv = inv_table[pv]
        for r in range(c + 1, n):
            f = m[:, r, c] * inv % p
            m[:, r, :] = (m[:, r, :] - f[:, None] * m[:, c, :]) % p
    return det


def to_mat(arr: np.ndarray, ctx: FieldCtx) -> Mat:
    return Mat._raw(tuple(tuple(int(x) for x in row) for row in arr), ctx)


def to_array(A: Mat) -> np.ndarray:
    if not A.ctx.is_finite:
        raise InfiniteField("numpy view needs a prime field")
    return np.array(A.rows, dtype=np.int64).reshape(A.n, A.n)
