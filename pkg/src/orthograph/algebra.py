"""Exact field arithmetic and dense square matrices.

Two kinds of field are supported: prime fields GF(p) and the rationals.
Matrix entries are stored "raw" for speed (``int`` residues in ``[0, p)`` or
``fractions.Fraction``); :class:`Scalar` wraps a raw value together with its
field for the public API.

Text format for matrices: rows separated by ``;``, entries by ``,``.  Each
entry is an optionally signed integer or ``a/b``.  Example: ``"0,1,2;0,1,0;0,0,0"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotInvertible,
    ParseError,
    TrivialKernel,
    ZeroInverse,
)

Raw = Union[int, Fraction]

MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    """A field: ``GF(p)`` when ``p`` is set, the rationals when ``p is None``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise ValueError(f"field characteristic must be an int, got {self.p!r}")
            if self.p > MAX_PRIME or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not a prime below 2^31")

    @classmethod
    def prime(cls, p: int) -> "FieldCtx":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldCtx":
        return cls(None)

    @classmethod
    def parse(cls, spec: str | int) -> "FieldCtx":
        """Build a field from ``"rational"`` (or ``"Q"``) or a prime."""
        if isinstance(spec, int):
            return cls(spec)
        s = spec.strip().lower()
        if s in ("rational", "rationals", "q"):
            return cls(None)
        try:
            return cls(int(s))
        except ValueError as exc:
            raise ParseError(f"bad field spec {spec!r}: {exc}") from None

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int | None:
        return self.p

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    # raw arithmetic -----------------------------------------------------

    @property
    def zero(self) -> Raw:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.p is not None else Fraction(1)

    def coerce(self, value) -> Raw:
        """Convert ints, Fractions, Scalars or entry strings to a raw element."""
        if isinstance(value, Scalar):
            if value.ctx != self:
                raise FieldMismatch(f"scalar over {value.ctx} used in {self}")
            return value.value
        if isinstance(value, str):
            return parse_entry(value, self)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p if self.p is not None else Fraction(value)
        if isinstance(value, Fraction):
            if self.p is None:
                return value
            den = value.denominator % self.p
            if den == 0:
                raise ZeroInverse(f"denominator {value.denominator} vanishes in {self}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b % self.p if self.p is not None else a * b

    def neg(self, a: Raw) -> Raw:
        return -a % self.p if self.p is not None else -a

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in {self}")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        """Residues ``0..p-1`` of a finite field."""
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def sort_key(self, a: Raw):
        # residues by value, rationals by the usual order
        return a

    def format(self, a: Raw) -> str:
        if self.p is not None:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def parse_entry(text: str, ctx: FieldCtx) -> Raw:
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            num, den = int(num), int(den)
            if den == 0:
                raise ZeroInverse(f"zero denominator in {text!r}")
            return ctx.coerce(Fraction(num, den))
        return ctx.coerce(int(s))
    except ValueError:
        raise ParseError(f"bad matrix entry {text!r}") from None


@dataclass(frozen=True)
class Scalar:
    """A field element tied to its field."""

    value: Raw
    ctx: FieldCtx

    @classmethod
    def of(cls, value, ctx: FieldCtx) -> "Scalar":
        return cls(ctx.coerce(value), ctx)

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ctx.add(self.value, o), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ctx.sub(self.value, o), self.ctx)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ctx.sub(o, self.value), self.ctx)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ctx.mul(self.value, o), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ctx.div(self.value, o), self.ctx)

    def __neg__(self):
        return Scalar(self.ctx.neg(self.value), self.ctx)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ctx.format(self.value)

    def __lt__(self, other: "Scalar"):
        return self.ctx.sort_key(self.value) < self.ctx.sort_key(self._other(other))


def scalar_inv(x: Scalar) -> Scalar:
    """Multiplicative inverse; raises :class:`ZeroInverse` for zero."""
    return Scalar(x.ctx.inv(x.value), x.ctx)


class Mat:
    """Immutable dense n x n matrix over a :class:`FieldCtx`.

    ``A[i, j]`` uses 0-based indices, like any Python sequence.  The named
    constructors that mirror mathematical notation (:meth:`unit`) use 1-based
    indices.
    """

    __slots__ = ("rows", "ctx", "n", "_hash")

    def __init__(self, rows: Iterable[Iterable], ctx: FieldCtx):
        coerced = tuple(tuple(ctx.coerce(x) for x in row) for row in rows)
        n = len(coerced)
        if n == 0 or any(len(r) != n for r in coerced):
            raise DimensionMismatch("matrix must be square and non-empty")
        self._set(coerced, ctx)

    def _set(self, rows, ctx):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", len(rows))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, ctx: FieldCtx) -> "Mat":
        # trusted fast path: rows already reduced tuples
        m = object.__new__(cls)
        m._set(rows, ctx)
        return m

    def __setattr__(self, key, value):
        raise AttributeError("Mat is immutable")

    # constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, n: int, ctx: FieldCtx) -> "Mat":
        z = ctx.zero
        return cls._raw(tuple((z,) * n for _ in range(n)), ctx)

    @classmethod
    def identity(cls, n: int, ctx: FieldCtx) -> "Mat":
        z, o = ctx.zero, ctx.one
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), ctx)

    @classmethod
    def unit(cls, n: int, i: int, j: int, ctx: FieldCtx, value=1) -> "Mat":
        """``value * E_ij`` with 1-based ``i, j``."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"E_{i}{j} out of range for n={n}")
        v = ctx.coerce(value)
        z = ctx.zero
        return cls._raw(
            tuple(tuple(v if (r, c) == (i - 1, j - 1) else z for c in range(n)) for r in range(n)), ctx
        )

    @classmethod
    def jordan(cls, n: int, ctx: FieldCtx) -> "Mat":
        """Nilpotent Jordan block ``J_n`` (ones on the superdiagonal)."""
        z, o = ctx.zero, ctx.one
        return cls._raw(tuple(tuple(o if c == r + 1 else z for c in range(n)) for r in range(n)), ctx)

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx) -> "Mat":
        rows = [r for r in text.strip().split(";")]
        try:
            return cls([[parse_entry(e, ctx) for e in row.split(",")] for row in rows], ctx)
        except DimensionMismatch:
            raise ParseError(f"matrix text {text!r} is not square") from None

    # accessors ----------------------------------------------------------

    def __getitem__(self, idx) -> Scalar:
        i, j = idx
        return Scalar(self.rows[i][j], self.ctx)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def transpose(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)), self.ctx)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows and (self.ctx is other.ctx or self.ctx == other.ctx)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.ctx))
            object.__setattr__(self, "_hash", h)
        return h

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        _check_compatible(self, other)
        add = self.ctx.add
        return Mat._raw(
            tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ctx
        )

    def __sub__(self, other: "Mat") -> "Mat":
        _check_compatible(self, other)
        sub = self.ctx.sub
        return Mat._raw(
            tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ctx
        )

    def scale(self, c) -> "Mat":
        c = self.ctx.coerce(c)
        m = self.ctx.mul
        return Mat._raw(tuple(tuple(m(c, a) for a in r) for r in self.rows), self.ctx)

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Mat({format_matrix(self)!r}, {self.ctx})"

    def sort_key(self) -> tuple:
        """Row-major entries, giving the lexicographic order used for enumeration."""
        return tuple(x for row in self.rows for x in row)


def format_matrix(A: Mat) -> str:
    f = A.ctx.format
    return ";".join(",".join(f(x) for x in row) for row in A.rows)


def _check_compatible(A: Mat, B: Mat) -> None:
    if A.ctx is not B.ctx and A.ctx != B.ctx:
        raise FieldMismatch(f"{A.ctx} vs {B.ctx}")
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n}x{A.n} vs {B.n}x{B.n}")


def mat_mul(A: Mat, B: Mat) -> Mat:
    """Exact product ``A @ B``."""
    _check_compatible(A, B)
    cols = tuple(zip(*B.rows))
    p = A.ctx.p
    if p is not None:
        rows = tuple(tuple(sum(map(mul, r, c)) % p for c in cols) for r in A.rows)
    else:
        rows = tuple(tuple(sum(map(mul, r, c), Fraction(0)) for c in cols) for r in A.rows)
    return Mat._raw(rows, A.ctx)


def product_vanishes(A: Mat, B: Mat) -> bool:
    """True iff ``A @ B == 0``, stopping at the first nonzero entry."""
    _check_compatible(A, B)
    rows = [r for r in A.rows if any(r)]
    if not rows:
        return True
    cols = tuple(zip(*B.rows))
    p = A.ctx.p
    for c in cols:
        if not any(c):
            continue
        for r in rows:
            s = sum(map(mul, r, c))
            if (s % p if p is not None else s) != 0:
                return False
    return True


# Gaussian elimination -------------------------------------------------------


def _rows_of(A, ctx: FieldCtx | None):
    if isinstance(A, Mat):
        return [list(r) for r in A.rows], A.n, A.ctx
    if ctx is None:
        raise TypeError("a field context is required for raw row blocks")
    rows = [[ctx.coerce(x) for x in r] for r in A]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatch("ragged row block")
    return rows, ncols, ctx


def rref(rows: list, ncols: int, ctx: FieldCtx) -> tuple[list, list]:
    """Reduced row echelon form, scanning pivot columns left to right.

    Works on a copy; returns ``(reduced_rows, pivot_columns)``.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(x, inv) for x in m[r]]
        pr = m[r]
        for k in range(nrows):
            f = m[k][c]
            if k != r and f != 0:
                m[k] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[k], pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_vector_raw(rows, ncols: int, ctx: FieldCtx) -> list:
    """Deterministic nonzero solution of ``rows @ x = 0`` as raw values.

    The first free column gets 1, the other free columns 0, and the result is
    scaled so its first nonzero coordinate is 1.
    """
    m, pivots = rref(rows, ncols, ctx)
    pivot_set = set(pivots)
    free = next((c for c in range(ncols) if c not in pivot_set), None)
    if free is None:
        raise TrivialKernel("the kernel is {0}")
    x = [ctx.zero] * ncols
    x[free] = ctx.one
    for k, c in enumerate(pivots):
        x[c] = ctx.neg(m[k][free])
    lead = next(v for v in x if v != 0)
    if lead != 1:
        s = ctx.inv(lead)
        x = [ctx.mul(v, s) for v in x]
    return x


def right_kernel_vector(A, ctx: FieldCtx | None = None) -> tuple[Scalar, ...]:
    """Nonzero ``v`` with ``A v = 0``; ``A`` is a :class:`Mat` or a list of rows."""
    rows, ncols, ctx = _rows_of(A, ctx)
    return tuple(Scalar(v, ctx) for v in kernel_vector_raw(rows, ncols, ctx))


def left_kernel_vector(A, ctx: FieldCtx | None = None) -> tuple[Scalar, ...]:
    """Nonzero row vector ``w`` with ``w A = 0`` (the right kernel of the transpose)."""
    rows, ncols, ctx = _rows_of(A, ctx)
    cols = [list(c) for c in zip(*rows)] if rows else []
    return tuple(Scalar(v, ctx) for v in kernel_vector_raw(cols, len(rows), ctx))


def rank(A, ctx: FieldCtx | None = None) -> int:
    rows, ncols, ctx = _rows_of(A, ctx)
    return len(rref(rows, ncols, ctx)[1])


def is_singular(A: Mat) -> bool:
    return rank(A) < A.n


def is_upper_triangular(A: Mat) -> bool:
    return not any(any(row[:i]) for i, row in enumerate(A.rows))


def triangular_inverse(A: Mat) -> Mat:
    """Inverse of an invertible upper triangular matrix by back substitution."""
    if not is_upper_triangular(A):
        raise NotInvertible("matrix is not upper triangular")
    n, ctx, a = A.n, A.ctx, A.rows
    if any(a[i][i] == 0 for i in range(n)):
        raise NotInvertible("zero on the diagonal")
    dinv = [ctx.inv(a[i][i]) for i in range(n)]
    x = [[ctx.zero] * n for _ in range(n)]
    for j in range(n):
        x[j][j] = dinv[j]
        for i in range(j - 1, -1, -1):
            s = ctx.zero
            for k in range(i + 1, j + 1):
                s = ctx.add(s, ctx.mul(a[i][k], x[k][j]))
            x[i][j] = ctx.neg(ctx.mul(s, dinv[i]))
    return Mat._raw(tuple(tuple(r) for r in x), ctx)


def vec_mat(v: Sequence[Raw], rows: Sequence[Sequence[Raw]], ctx: FieldCtx) -> list:
    """Row vector times matrix, raw values."""
    out = []
    for col in zip(*rows):
        s = sum(map(mul, v, col))
        out.append(s % ctx.p if ctx.p is not None else s)
    return out


def mat_vec(rows: Sequence[Sequence[Raw]], v: Sequence[Raw], ctx: FieldCtx) -> list:
    out = []
    for r in rows:
        s = sum(map(mul, r, v))
        out.append(s % ctx.p if ctx.p is not None else s)
    return out
