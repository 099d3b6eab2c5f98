"""Exact rational matrices and sparse linear solves.

Matrices are immutable tuples of row tuples holding ``Fraction`` values.
Linear systems are lists of sparse rows ``{column: coefficient}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError, SingularMatrixError
from .kernels import matmul as _matmul
from .kernels import integer_adjugate, reduce_rows

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]
SparseRow = dict  # dict[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((_ZERO,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return scalar_matrix(n, 1)


def scalar_matrix(n: int, c) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c if i == j else _ZERO for j in range(n)) for i in range(n))


def size(A: Matrix) -> int:
    return len(A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return _matmul(A, B)


def matprod(mats: Sequence[Matrix], n: int) -> Matrix:
    out = identity(n)
    for M in mats:
        out = _matmul(out, M)
    return out


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(c, A: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * a for a in row) for row in A)


def neg(A: Matrix) -> Matrix:
    return tuple(tuple(-a for a in row) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def trace(A: Matrix) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), _ZERO)


def trace_product(A: Matrix, B: Matrix) -> Fraction:
    """tr(A B) without forming the product."""
    out = _ZERO
    for j, brow in enumerate(B):
        for i, b in enumerate(brow):
            if b:
                out += A[i][j] * b
    return out


# Signed permutation ("monomial") matrices are stored as (perm, vals) with
# M[i][perm[i]] = vals[i]; products against them cost O(n^2), traces O(n).


def monomial(A: Matrix):
    perm, vals = [], []
    for row in A:
        nz = [(j, x) for j, x in enumerate(row) if x]
        if len(nz) != 1:
            return None
        perm.append(nz[0][0])
        vals.append(nz[0][1])
    if len(set(perm)) != len(perm):
        return None
    return tuple(perm), tuple(vals)


def _times(x, v):
    if v == 1:
        return x
    if v == -1:
        return -x
    return x * v


def mono_left(mono, A: Matrix) -> Matrix:
    """M A for monomial M."""
    perm, vals = mono
    out = [None] * len(perm)
    for i, (j, v) in enumerate(zip(perm, vals)):
        out[i] = tuple(_times(x, v) for x in A[j])
    return tuple(out)


def mono_right(A: Matrix, mono) -> Matrix:
    """A M for monomial M."""
    perm, vals = mono
    n = len(perm)
    out = []
    for row in A:
        r = [_ZERO] * n
        for i, (j, v) in enumerate(zip(perm, vals)):
            r[j] = _times(row[i], v)
        out.append(tuple(r))
    return tuple(out)


def mono_trace(A: Matrix, mono) -> Fraction:
    """tr(A M) for monomial M."""
    perm, vals = mono
    return sum((_times(A[j][i], v) for i, (j, v) in enumerate(zip(perm, vals))), _ZERO)


def mono_lincomb(coeffs: Sequence, monos: Sequence, n: int) -> Matrix:
    acc = [[_ZERO] * n for _ in range(n)]
    for c, (perm, vals) in zip(coeffs, monos):
        if not c:
            continue
        c = Fraction(c)
        for i, (j, v) in enumerate(zip(perm, vals)):
            acc[i][j] += _times(c, v)
    return tuple(tuple(r) for r in acc)


def is_zero(A: Matrix) -> bool:
    return not any(any(row) for row in A)


def is_scalar(A: Matrix) -> Fraction | None:
    """Return ``c`` if ``A == c*I``, else ``None``."""
    n = len(A)
    c = A[0][0] if n else _ZERO
    for i in range(n):
        for j in range(n):
            if A[i][j] != (c if i == j else 0):
                return None
    return c


def lincomb(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    n = len(mats[0])
    m = len(mats[0][0]) if n else 0
    acc = [[_ZERO] * m for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        c = Fraction(c)
        for i, row in enumerate(M):
            arow = acc[i]
            for j, x in enumerate(row):
                if x:
                    arow[j] += c * x
    return tuple(tuple(r) for r in acc)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return sub(matmul(A, B), matmul(B, A))


def anticommutator(A: Matrix, B: Matrix) -> Matrix:
    return add(matmul(A, B), matmul(B, A))


def kron(A: Matrix, B: Matrix) -> Matrix:
    rows = []
    for ra in A:
        for rb in B:
            rows.append(tuple(a * b for a in ra for b in rb))
    return tuple(rows)


def first_nonzero(A: Matrix) -> Fraction:
    for row in A:
        for x in row:
            if x:
                return x
    return _ZERO


def inverse(A: Matrix) -> Matrix:
    """Exact inverse; raises :class:`SingularMatrixError`.

    The matrix is scaled to integers and inverted by fraction-free
    elimination, so Fractions appear only in the final division.
    """
    n = len(A)
    den = 1
    for row in A:
        for x in row:
            d = Fraction(x).denominator
            if d != 1:
                den = den * d // gcd(den, d)
    M = [[int(Fraction(x) * den) for x in row] for row in A]
    adj, dt = integer_adjugate(M)
    if not dt:
        raise SingularMatrixError("matrix is singular")
    # A^-1 = den * M^-1 = den * adj / det
    return tuple(tuple(Fraction(den * x, dt) for x in row) for row in adj)


def det(A: Matrix) -> Fraction:
    n = len(A)
    M = [list(row) for row in A]
    out = _ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return _ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            out = -out
        p = M[col][col]
        out *= p
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / p
                for j in range(col, n):
                    M[r][j] -= f * M[col][j]
    return out


# ---------------------------------------------------------------- sparse solves


def nullspace(rows: Iterable[SparseRow], ncols: int) -> list[SparseRow]:
    """Basis of ``{x : row . x = 0 for all rows}`` as sparse vectors.

    Basis vectors are indexed by free columns in increasing order; each has
    a 1 at its free column.
    """
    pivots = reduce_rows(rows, ncols)
    by_col: dict[int, list[int]] = {}
    for pc, row in pivots.items():
        for c in row:
            if c != pc:
                by_col.setdefault(c, []).append(pc)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: _ONE}
        for pc in by_col.get(f, ()):
            vec[pc] = -pivots[pc][f]
        basis.append(vec)
    return basis


def rank(rows: Iterable[SparseRow], ncols: int) -> int:
    return len(reduce_rows(rows, ncols))


def solve_particular(rows: Sequence[SparseRow], rhs: Sequence, ncols: int) -> SparseRow | None:
    """One solution of ``rows . x = rhs`` or ``None`` if inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b:
            rr[ncols] = -Fraction(b)
        aug.append(rr)
    basis = nullspace(aug, ncols + 1)
    for v in basis:
        if v.get(ncols):
            t = v[ncols]
            return {c: x / t for c, x in v.items() if c != ncols}
    return None


def matrix_to_sparse(A: Matrix) -> SparseRow:
    m = len(A[0]) if A else 0
    return {i * m + j: x for i, row in enumerate(A) for j, x in enumerate(row) if x}


def sparse_to_matrix(v: SparseRow, n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    rows = [[_ZERO] * m for _ in range(n)]
    for k, x in v.items():
        rows[k // m][k % m] = Fraction(x)
    return tuple(tuple(r) for r in rows)


def _row_nz(P: Matrix | None, n: int):
    if P is None:
        return [[(i, _ONE)] for i in range(n)]
    return [[(k, x) for k, x in enumerate(row) if x] for row in P]


def _col_nz(Q: Matrix | None, n: int):
    if Q is None:
        return [[(j, _ONE)] for j in range(n)]
    return _row_nz(transpose(Q), n)


def matrix_equation_rows(n: int, terms: Sequence[tuple]) -> list[SparseRow]:
    """Rows of the system ``sum_t c_t * P_t X' Q_t = 0`` for an unknown n x n X.

    Each term is ``(c, P, Q, transposed)`` with ``P``/``Q`` a matrix or
    ``None`` for the identity; ``X'`` is ``X`` or its transpose.
    """
    prepared = [(Fraction(c), _row_nz(P, n), _col_nz(Q, n), tr) for c, P, Q, tr in terms]
    rows = []
    for a in range(n):
        for b in range(n):
            row: dict[int, Fraction] = {}
            for c, pr, qc, tr in prepared:
                for k, pk in pr[a]:
                    for l, ql in qc[b]:
                        var = l * n + k if tr else k * n + l
                        val = row.get(var, _ZERO) + c * pk * ql
                        if val:
                            row[var] = val
                        else:
                            row.pop(var, None)
            if row:
                rows.append(row)
    return rows


def solve_matrix_space(n: int, blocks: Sequence[Sequence[tuple]]) -> list[Matrix]:
    """Basis of the n x n matrices satisfying every equation block."""
    rows: list[SparseRow] = []
    for terms in blocks:
        rows.extend(matrix_equation_rows(n, terms))
    return [sparse_to_matrix(v, n) for v in nullspace(rows, n * n)]


def span_dimension(mats: Sequence[Matrix]) -> int:
    if not mats:
        return 0
    n = len(mats[0])
    m = len(mats[0][0]) if n else 0
    return rank((matrix_to_sparse(M) for M in mats), n * m)


def express_in_span(target: Matrix, basis: Sequence[Matrix]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``target = sum c_i basis_i``, or ``None``."""
    n = len(target)
    m = len(target[0]) if n else 0
    k = len(basis)
    cols = [matrix_to_sparse(B) for B in basis]
    rows: dict[int, dict[int, Fraction]] = {}
    for j, col in enumerate(cols):
        for pos, x in col.items():
            rows.setdefault(pos, {})[j] = x
    tvec = matrix_to_sparse(target)
    eqs = []
    rhs = []
    for pos in set(rows) | set(tvec):
        eqs.append(rows.get(pos, {}))
        rhs.append(tvec.get(pos, _ZERO))
    if not any(rhs):
        return [_ZERO] * k
    sol = solve_particular(eqs, rhs, k)
    if sol is None:
        return None
    return [sol.get(i, _ZERO) for i in range(k)]


def check_shape(A: Matrix, n: int) -> None:
    if len(A) != n or any(len(r) != n for r in A):
        raise InputError(f"expected a {n}x{n} matrix")
