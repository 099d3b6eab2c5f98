"""The compiled and pure-Python kernels must agree exactly."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffpin import _pykernels as py
from cliffpin import kernels
from cliffpin import linalg as la

from oracles import fractions, word_product

try:
    from cliffpin import _ckernels as cy
except ImportError:  # extension not built
    cy = None

BACKENDS = [py] if cy is None else [py, cy]
needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

masks = st.integers(0, (1 << 9) - 1)
small_ints = st.integers(-6, 6)


def matrices(n, m, elems=fractions):
    return st.lists(st.lists(elems, min_size=m, max_size=m).map(tuple), min_size=n, max_size=n).map(tuple)


@st.composite
def matrix_pairs(draw):
    n, k, m = (draw(st.integers(1, 5)) for _ in range(3))
    return draw(matrices(n, k)), draw(matrices(k, m))


def _word(mask):
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _rank(rows):
    """Rank over Q by plain Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _leibniz_det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inv & 1 else 1
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@given(a=masks, b=masks, p=st.integers(0, 9))
def test_blade_sign_matches_word_oracle(impl, a, b, p):
    neg = ((1 << 9) - 1) ^ ((1 << p) - 1)
    sign, word = word_product(p, _word(a), _word(b))
    assert word == _word(a ^ b)
    assert impl.blade_sign(a, b, neg) == sign


@needs_cy
@given(
    ta=st.dictionaries(masks, fractions.filter(bool), max_size=6),
    tb=st.dictionaries(masks, fractions.filter(bool), max_size=6),
    neg=masks,
)
def test_multiply_terms_parity(ta, tb, neg):
    assert cy.multiply_terms(ta, tb, neg) == py.multiply_terms(ta, tb, neg)


@needs_cy
@given(matrix_pairs())
def test_matmul_parity(pair):
    A, B = pair
    assert cy.matmul(A, B) == py.matmul(A, B)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@given(matrix_pairs())
def test_matmul_matches_definition(impl, pair):
    A, B = pair
    expected = tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0])))
        for i in range(len(A))
    )
    got = impl.matmul(A, B)
    assert got == expected
    assert all(type(x) is Fraction for row in got for x in row)


def _rows(ncols):
    return st.lists(st.dictionaries(st.integers(0, ncols - 1), small_ints, max_size=ncols), max_size=6)


@st.composite
def row_systems(draw):
    ncols = draw(st.integers(1, 6))
    return ncols, draw(_rows(ncols))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@given(row_systems())
def test_reduce_rows_is_rref_of_same_span(impl, system):
    ncols, rows = system
    piv = impl.reduce_rows(rows, ncols)
    for c, r in piv.items():
        assert r[c] == 1
        assert all(cc >= c for cc in r)
        assert all(cc == c or cc not in piv for cc in r)
    dense_in = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    dense_out = [[r.get(c, Fraction(0)) for c in range(ncols)] for r in piv.values()]
    rank_in = _rank(dense_in)
    assert len(piv) == rank_in
    assert _rank(dense_in + dense_out) == rank_in


@needs_cy
@given(row_systems())
def test_reduce_rows_parity(system):
    ncols, rows = system
    assert cy.reduce_rows(rows, ncols) == py.reduce_rows(rows, ncols)


@st.composite
def square_int(draw):
    n = draw(st.integers(1, 5))
    return [draw(st.lists(small_ints, min_size=n, max_size=n)) for _ in range(n)]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@given(square_int())
def test_integer_adjugate(impl, M):
    adj, det = impl.integer_adjugate([row[:] for row in M])
    assert det == _leibniz_det(M)
    assert det == la.det(tuple(tuple(Fraction(x) for x in row) for row in M))
    if det:
        n = len(M)
        prod = [[sum(M[i][k] * adj[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert prod == [[det if i == j else 0 for j in range(n)] for i in range(n)]
    else:
        assert adj is None


@needs_cy
@given(square_int())
def test_integer_adjugate_parity(M):
    assert cy.integer_adjugate([r[:] for r in M]) == py.integer_adjugate([r[:] for r in M])


def test_selected_backend_is_one_of_the_two():
    assert kernels.BACKEND in {m.BACKEND for m in BACKENDS} | {"python"}
