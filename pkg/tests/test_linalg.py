from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtamin.errors import DimensionError, NoSolution, NotUnique, ParseError
from mtamin.linalg import (
    BasisBuilder,
    Matrix,
    basis_insert,
    char_poly_coeffs,
    det,
    format_matrix,
    format_rational,
    inverse,
    kernel,
    kron,
    kron_power,
    parse_matrix,
    parse_rational,
    rank,
    row_space_contains,
    same_row_space,
    solve_right,
)
from oracles import naive_char_poly, naive_det, naive_kron, naive_matmul, naive_rank, to_lists

small = st.integers(-3, 3).map(Fraction)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, entries=small, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)], c)


@st.composite
def square(draw, max_n=4, entries=small):
    n = draw(st.integers(0, max_n))
    return draw(matrices(rows=n, cols=n, entries=entries))


# --- examples --------------------------------------------------------------

def test_kron_examples():
    a = Matrix([[1, 2], [3, 4]])
    assert kron(Matrix.identity(1), a) == a
    assert kron(Matrix([[1, 0]]), Matrix([[0, 1]])) == Matrix([[0, 1, 0, 0]])
    assert kron(a, Matrix([[0, 1], [1, 0]])) == Matrix(
        [[0, 1, 0, 2], [1, 0, 2, 0], [0, 3, 0, 4], [3, 0, 4, 0]])


def test_kron_power_examples():
    a = Matrix([[1, 2], [3, 4]])
    assert kron_power(a, 0) == Matrix.identity(1)
    assert kron_power(a, 1) == a
    assert kron_power(Matrix([[1, 1]]), 2) == Matrix([[1, 1, 1, 1]])


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(2, 3)) == 0
    assert rank(Matrix([[1, 2], [2, 4]])) == 1


def test_solve_right_examples():
    n = Matrix([[1, 2], [3, 4]])
    assert solve_right(Matrix.identity(2), n) == n
    assert solve_right(Matrix([[2]]), Matrix([[1]])) == Matrix([[Fraction(1, 2)]])
    assert solve_right(Matrix([[1, 0, 1], [0, 1, 1]]), Matrix([[1, 1, 2]])) == Matrix([[1, 1]])


def test_solve_right_errors():
    with pytest.raises(NoSolution):
        solve_right(Matrix([[1, 0]]), Matrix([[0, 1]]))
    with pytest.raises(NotUnique):
        solve_right(Matrix([[1, 0], [2, 0]]), Matrix([[1, 0]]))
    with pytest.raises(DimensionError):
        solve_right(Matrix([[1, 0]]), Matrix([[1]]))


def test_basis_builder_examples():
    b = BasisBuilder(2)
    b, flag = basis_insert(b, [1, 0])
    assert flag
    b, flag = basis_insert(b, [2, 0])
    assert not flag
    b = BasisBuilder(2)
    assert [b.insert(v) for v in ([1, 1], [1, -1], [0, 1])] == [True, True, False]


def test_char_poly_examples():
    assert char_poly_coeffs(Matrix.identity(2)) == [1, -2, 1]
    assert char_poly_coeffs(Matrix.diag([2, 3])) == [6, -5, 1]
    assert char_poly_coeffs(Matrix([[0, 1], [1, 0]])) == [-1, 0, 1]
    assert char_poly_coeffs(Matrix.zeros(0, 0)) == [1]


def test_empty_shapes():
    z = Matrix.zeros(0, 3)
    assert rank(z) == 0
    assert (Matrix.zeros(2, 0) @ Matrix.zeros(0, 3)) == Matrix.zeros(2, 3)
    assert kron(Matrix.zeros(0, 2), Matrix.identity(2)).shape == (0, 4)
    assert det(Matrix.zeros(0, 0)) == 1
    assert solve_right(Matrix.zeros(0, 2), Matrix.zeros(3, 2)) == Matrix.zeros(3, 0)


def test_rationals_text():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ("3/0", "1.5", "", "a", "1/-2"):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_matrix_text_errors():
    with pytest.raises(ParseError) as e:
        parse_matrix("2 2\n1 2\n3 x\n")
    assert e.value.line == 3 and e.value.column == 3
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 2\n")
    with pytest.raises(ParseError):
        parse_matrix("1 2\n1 2 3\n")


def test_floats_rejected():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


# --- properties against oracles ----------------------------------------------

@given(matrices(), matrices())
def test_kron_matches_index_formula(a, b):
    assert to_lists(kron(a, b)) == naive_kron(a, b)


@settings(max_examples=50)
@given(st.data())
def test_kron_mixed_product(data):
    p, q, r, s, t, u = (data.draw(st.integers(1, 3)) for _ in range(6))
    a = data.draw(matrices(rows=p, cols=q))
    b = data.draw(matrices(rows=r, cols=s))
    c = data.draw(matrices(rows=q, cols=t))
    d = data.draw(matrices(rows=s, cols=u))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(matrices(entries=rationals))
def test_rank_matches_naive(a):
    assert rank(a) == naive_rank(a)


@given(matrices(entries=rationals))
def test_gram_rank(a):
    # rank(A^T A) = rank(A) over an ordered field
    assert rank(a.T @ a) == rank(a)


@given(matrices(max_rows=5, max_cols=3), st.data())
def test_rank_substitution(a, data):
    # replacing a row by a combination with a nonzero own coefficient keeps the rank
    if a.nrows < 2:
        return
    i = data.draw(st.integers(0, a.nrows - 1))
    j = data.draw(st.integers(0, a.nrows - 1).filter(lambda x: x != i))
    lam = data.draw(st.integers(1, 3))
    mu = data.draw(st.integers(-3, 3))
    rows = list(a.rows)
    rows[i] = tuple(lam * x + mu * y for x, y in zip(rows[i], rows[j]))
    assert rank(Matrix(rows, a.ncols)) == rank(a)


@given(st.data())
def test_matmul_matches_naive(data):
    p, q, r = (data.draw(st.integers(0, 3)) for _ in range(3))
    a = data.draw(matrices(rows=p, cols=q, entries=rationals))
    b = data.draw(matrices(rows=q, cols=r, entries=rationals))
    assert to_lists(a @ b) == naive_matmul(a, b)


@given(square(entries=rationals))
def test_det_matches_leibniz(a):
    assert det(a) == naive_det(a)


@given(square(entries=rationals))
def test_char_poly_matches_interpolation(a):
    assert char_poly_coeffs(a) == naive_char_poly(a)


@given(square(), st.data())
def test_solve_right_roundtrip(m, data):
    x = data.draw(matrices(cols=m.nrows, max_rows=3))
    n = x @ m
    if rank(m) == m.nrows:
        assert solve_right(m, n) == x
    elif m.nrows:
        with pytest.raises(NotUnique):
            solve_right(m, n)


@given(square(entries=rationals))
def test_inverse(a):
    if det(a) != 0:
        assert inverse(a) @ a == Matrix.identity(a.nrows)


@given(matrices(entries=rationals))
def test_kernel(a):
    k = kernel(a)
    assert k.nrows == a.ncols - naive_rank(a)
    for v in k.rows:
        assert not any(a.mul_vector(v))


@given(matrices(max_rows=6, max_cols=4))
def test_basis_builder_tracks_rank(a):
    b = BasisBuilder(a.ncols)
    flags = [b.insert(r) for r in a.rows]
    for i, f in enumerate(flags):
        assert f == (naive_rank(a.rows[: i + 1]) > naive_rank(a.rows[:i]) if i else any(a.rows[0]))
    assert len(b) == naive_rank(a)
    assert same_row_space(b.as_matrix() if len(b) else Matrix.zeros(0, a.ncols), a) or a.is_zero()
    assert all(b.contains(r) for r in a.rows)


@given(matrices(max_rows=6, max_cols=4, entries=st.integers(-40, 40).map(Fraction)))
def test_basis_builder_unlucky_modulus(a):
    # a tiny modulus makes spurious dependencies common; answers must stay exact
    b = BasisBuilder(a.ncols, modulus=3)
    exact = BasisBuilder(a.ncols, modulus=None)
    for r in a.rows:
        assert b.insert(r) == exact.insert(r)
    assert len(b) == naive_rank(a)
    assert b.pivot_cols == exact.pivot_cols


def test_basis_builder_forced_fallback():
    # [3, 1] is dependent on [0, 1] modulo 3 but not over the rationals
    b = BasisBuilder(2, modulus=3)
    assert b.insert([0, 1])
    assert b.insert([3, 1])
    assert len(b) == 2 and b._p is None


@given(matrices(), matrices())
def test_row_space_contains(a, b):
    if a.ncols != b.ncols:
        return
    from oracles import naive_row_space_contains
    assert row_space_contains(a, b) == naive_row_space_contains(a, b)


@given(matrices(entries=rationals))
def test_matrix_text_roundtrip(a):
    assert parse_matrix(format_matrix(a)) == a
