from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthograph import FieldCtx, Mat, Scalar
from orthograph.algebra import (
    left_kernel_vector,
    mat_mul,
    rank,
    right_kernel_vector,
    scalar_inv,
    triangular_inverse,
    is_upper_triangular,
)
from orthograph.errors import (
    DimensionMismatch,
    FieldMismatch,
    NotInvertible,
    ParseError,
    TrivialKernel,
    ZeroInverse,
)

GF2, GF3, GF5, Q = FieldCtx(2), FieldCtx(3), FieldCtx(5), FieldCtx.rationals()


def brute_inverse(x: int, p: int) -> int:
    return next(y for y in range(1, p) if x * y % p == 1)


# fields and scalars ---------------------------------------------------------


@pytest.mark.parametrize("p", [4, 1, 0, 9, 2**31 + 11])
def test_non_primes_rejected(p):
    with pytest.raises(ValueError):
        FieldCtx(p)


def test_scalar_inv_examples():
    assert brute_inverse(2, 5) == 3
    assert scalar_inv(Scalar(2, GF5)) == Scalar(3, GF5)
    assert scalar_inv(Scalar(Fraction(1), Q)) == Scalar(Fraction(1), Q)
    assert scalar_inv(Scalar(1, GF2)) == Scalar(1, GF2)


def test_scalar_inv_zero():
    with pytest.raises(ZeroInverse):
        scalar_inv(Scalar(0, GF3))
    with pytest.raises(ZeroInverse):
        scalar_inv(Scalar(Fraction(0), Q))


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Scalar(1, GF2) + Scalar(1, GF3)
    with pytest.raises(FieldMismatch):
        mat_mul(Mat.identity(2, GF2), Mat.identity(2, GF3))


@pytest.mark.parametrize("ctx", [GF2, GF3, GF5])
def test_field_axioms_exhaustive(ctx):
    els = [Scalar(v, ctx) for v in ctx.elements()]
    for x, y, z in product(els, repeat=3):
        assert (x * y) * z == x * (y * z)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
    for x in els:
        if x:
            assert x * scalar_inv(x) == Scalar(1, ctx)
            assert scalar_inv(x).value == brute_inverse(x.value, ctx.p)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(rationals, rationals, rationals)
def test_field_axioms_rationals(a, b, c):
    x, y, z = (Scalar.of(v, Q) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * scalar_inv(x) == Scalar.of(1, Q)


def test_residues_reduced_and_fractions_normalised():
    assert Mat.parse("-1,7;5,0", GF5).rows == ((4, 2), (0, 0))
    v = Mat.parse("2/4,-3/-6;0,1", Q).rows[0]
    assert v == (Fraction(1, 2), Fraction(1, 2))
    assert v[0].denominator == 2


def test_fraction_entries_in_prime_field():
    assert Mat.parse("1/2,0;0,0", GF5).rows[0][0] == 3


# matrices ------------------------------------------------------------------


def test_mat_mul_examples():
    E11 = Mat.unit(3, 1, 1, GF2)
    E13 = Mat.unit(3, 1, 3, GF2)
    assert mat_mul(E11, E13) == E13
    A = Mat.parse("1,2,3;0,4,5;0,0,6", Q)
    assert A @ Mat.identity(3, Q) == A
    J = Mat.jordan(3, Q)
    assert J @ J @ J == Mat.zeros(3, Q)
    assert not (J @ J).is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Mat.identity(2, Q) @ Mat.identity(3, Q)


def test_matrix_is_immutable_and_hashable():
    A = Mat.parse("1,2;0,1", GF3)
    with pytest.raises(AttributeError):
        A.n = 3
    assert hash(A) == hash(Mat.parse("1,2;0,1", GF3))
    assert A != Mat.parse("1,2;0,1", GF5)


def test_text_format_round_trip():
    s = "0,1,2;0,1,0;0,0,0"
    assert str(Mat.parse(s, GF3)) == s
    q = "1/2,-3;0,7/5"
    assert str(Mat.parse(q, Q)) == q


@pytest.mark.parametrize("bad", ["1,2;3", "a,b;c,d", "", "1/0,1;1,1"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroInverse)):
        Mat.parse(bad, Q)


@settings(max_examples=40)
@given(st.lists(st.integers(-100, 100), min_size=96, max_size=96))
def test_mat_mul_associative_over_rationals(vals):
    it = iter(vals)

    def m():
        return Mat([[Fraction(next(it), abs(next(it)) % 100 + 1) for _ in range(4)] for _ in range(4)], Q)

    A, B, C = m(), m(), m()
    assert (A @ B) @ C == A @ (B @ C)


# kernels -------------------------------------------------------------------


def test_right_kernel_examples():
    E12 = Mat.unit(2, 1, 2, Q)
    v = right_kernel_vector(E12)
    assert [x.value for x in v] == [1, 0]
    assert [x.value for x in right_kernel_vector(Mat.zeros(2, Q))] == [1, 0]
    with pytest.raises(TrivialKernel):
        right_kernel_vector(Mat.identity(2, Q))


def test_left_kernel_examples():
    E12 = Mat.unit(2, 1, 2, Q)
    w = [x.value for x in left_kernel_vector(E12)]
    assert w == [0, 1]
    # (0, 1) E12 = 0 by direct multiplication
    assert [sum(w[k] * E12.rows[k][j] for k in range(2)) for j in range(2)] == [0, 0]
    assert [x.value for x in left_kernel_vector(Mat.zeros(2, Q))] == [1, 0]
    with pytest.raises(TrivialKernel):
        left_kernel_vector(Mat.identity(2, Q))


def test_kernel_of_rectangular_block():
    v = right_kernel_vector([[1, 1, 0], [0, 1, 1]], GF3)
    vals = [x.value for x in v]
    assert vals[0] == 1
    assert (vals[0] + vals[1]) % 3 == 0 and (vals[1] + vals[2]) % 3 == 0


def test_kernel_rule_scales_first_nonzero_to_one():
    # kernel of (2, 4) over Q is spanned by (-2, 1); normalised to (1, -1/2)
    v = [x.value for x in right_kernel_vector([[2, 4]], Q)]
    assert v == [1, Fraction(-1, 2)]


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9), st.integers(0, 2))
def test_kernel_vector_property_gf3(entries, dead_row):
    rows = [entries[0:3], entries[3:6], entries[6:9]]
    rows[dead_row] = [0, 0, 0]
    A = Mat(rows, GF3)
    v = [x.value for x in right_kernel_vector(A)]
    assert any(v)
    assert all(sum(a * b for a, b in zip(r, v)) % 3 == 0 for r in A.rows)
    w = [x.value for x in left_kernel_vector(A)]
    assert all(sum(w[k] * A.rows[k][j] for k in range(3)) % 3 == 0 for j in range(3))


def test_rank():
    assert rank(Mat.jordan(4, GF2)) == 3
    assert rank(Mat.zeros(3, Q)) == 0
    assert rank(Mat.parse("1,2;2,4", Q)) == 1
    assert rank(Mat.parse("1,2;2,4", GF3)) == 1


# triangular inverse --------------------------------------------------------


def test_triangular_inverse_examples():
    assert triangular_inverse(Mat.identity(3, Q)) == Mat.identity(3, Q)
    A = Mat.identity(2, Q) + Mat.unit(2, 1, 2, Q)
    Ainv = triangular_inverse(A)
    assert Ainv == Mat.identity(2, Q) - Mat.unit(2, 1, 2, Q)
    assert A @ Ainv == Mat.identity(2, Q)
    with pytest.raises(NotInvertible):
        triangular_inverse(Mat.unit(2, 1, 1, Q))


@pytest.mark.parametrize("ctx", [GF2, GF3])
def test_triangular_inverse_exhaustive_t3(ctx):
    seen = 0
    for diag in product(range(1, ctx.p), repeat=3):
        for off in product(range(ctx.p), repeat=3):
            A = Mat([[diag[0], off[0], off[1]], [0, diag[1], off[2]], [0, 0, diag[2]]], ctx)
            X = triangular_inverse(A)
            assert is_upper_triangular(X)
            assert X @ A == A @ X == Mat.identity(3, ctx)
            seen += 1
    assert seen == (ctx.p - 1) ** 3 * ctx.p**3


@settings(max_examples=50)
@given(st.lists(rationals, min_size=10, max_size=10))
def test_triangular_inverse_rationals(vals):
    diag = [v if v != 0 else Fraction(1) for v in vals[:4]]
    off = iter(vals[4:])
    rows = [[diag[i] if i == j else (next(off) if j > i else 0) for j in range(4)] for i in range(4)]
    A = Mat(rows, Q)
    X = triangular_inverse(A)
    assert X @ A == A @ X == Mat.identity(4, Q)
