from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from nakct import linalg

entries = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def columns(mat):
    return [{i: row[j] for i, row in enumerate(mat) if row[j]} for j in range(len(mat[0]))]


@given(matrices())
def test_rank_matches_sympy(mat):
    assert linalg.rank(columns(mat)) == sympy.Matrix(mat).rank()


@given(matrices())
def test_kernel_is_exact_null_space(mat):
    cols = columns(mat)
    ker = linalg.kernel(cols)
    assert len(ker) == len(cols) - sympy.Matrix(mat).rank()
    for k in ker:
        assert linalg.apply(cols, k) == {}
    assert linalg.rank(ker) == len(ker)
    piv = linalg.pivots(ker)
    assert len(set(piv)) == len(piv)
    for v, p in zip(ker, piv):
        assert v[p] == 1 and all(w.get(p, 0) == 0 for w in ker if w is not v)


@given(matrices(), matrices())
def test_compose_matches_product(a, b):
    inner = len(a[0])
    b = [row[:] for row in (b * inner)[:inner]]
    got = linalg.compose(columns(a), columns(b))
    want = sympy.Matrix(a) * sympy.Matrix(b)
    assert got == columns(want.tolist())


@given(matrices())
def test_rref_coordinates_round_trip(mat):
    basis = linalg.rref(columns(mat))
    piv = linalg.pivots(basis)
    for col in columns(mat):
        c = linalg.coords(col, basis, piv)
        assert linalg.apply(basis, c) == col


def test_qdiv_stays_integral():
    assert linalg.qdiv(6, 3) == 2 and isinstance(linalg.qdiv(6, 3), int)
    assert linalg.qdiv(1, 2) == Fraction(1, 2)
    assert linalg.qdiv(Fraction(4, 2), 1) == 2


def test_complement_units():
    assert linalg.complement_units([{0: 1, 1: 1}], 3) == [1, 2]
