"""Pure-Python versions of the hot loops.

The compiled module ``_ckernels`` exposes the same four functions with the
same semantics; ``cliffpin.kernels`` picks one of them at import time.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"
_ZERO = Fraction(0)


def blade_sign(a, b, neg_mask):
    """Sign of the product of basis blades ``a`` and ``b`` (bitmasks)."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b & neg_mask).count("1")
    return -1 if swaps & 1 else 1


def multiply_terms(ta, tb, neg_mask):
    """Geometric product of two blade->coefficient dicts."""
    out = {}
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            swaps = 0
            x = ma >> 1
            while x:
                swaps += bin(x & mb).count("1")
                x >>= 1
            swaps += bin(ma & mb & neg_mask).count("1")
            m = ma ^ mb
            c = ca * cb
            if swaps & 1:
                c = -c
            v = out.get(m)
            out[m] = c if v is None else v + c
    return {m: c for m, c in out.items() if c}


def _integer_rows(M):
    """Scale a rational matrix to integers: returns (rows, common denominator)."""
    den = 1
    for row in M:
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    return [[x.numerator * (den // x.denominator) for x in row] for row in M], den


def matmul(A, B):
    """Exact product of two matrices stored as tuples of row tuples.

    Both factors are brought to a common denominator so the inner loop runs
    on Python integers; zero entries of ``B`` are skipped.
    """
    if not A:
        return ()
    m = len(B[0]) if B else 0
    ai, da = _integer_rows(A)
    bi, db = _integer_rows(B)
    bnz = [[(j, b) for j, b in enumerate(row) if b] for row in bi]
    den = da * db
    rows = []
    for row in ai:
        acc = [0] * m
        for k, a in enumerate(row):
            if a:
                for j, b in bnz[k]:
                    acc[j] += a * b
        if den == 1:
            rows.append(tuple(Fraction(v) if v else _ZERO for v in acc))
        else:
            rows.append(tuple(Fraction(v, den) if v else _ZERO for v in acc))
    return tuple(rows)


def reduce_rows(rows, ncols):
    """Sparse reduced row echelon form over the rationals.

    ``rows`` is an iterable of dicts ``{column: value}``. Returns a dict
    mapping each pivot column to its row (pivot entry 1, no other pivot
    column present).
    """
    pivots = {}
    # col -> set of pivot columns whose rows contain col
    occ = {}
    for raw in rows:
        r = {c: Fraction(v) for c, v in raw.items() if v}
        for c in [c for c in r if c in pivots]:
            f = r.get(c)
            if not f:
                continue
            for cc, vv in pivots[c].items():
                nv = r.get(cc, 0) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for other in list(occ.get(pc, ())):
            orow = pivots[other]
            f = orow[pc]
            for cc, vv in r.items():
                nv = orow.get(cc, 0) - f * vv
                if nv:
                    if cc not in orow:
                        occ.setdefault(cc, set()).add(other)
                    orow[cc] = nv
                else:
                    if cc in orow:
                        del orow[cc]
                        occ[cc].discard(other)
        occ.pop(pc, None)
        pivots[pc] = r
        for cc in r:
            if cc != pc:
                occ.setdefault(cc, set()).add(pc)
    return pivots


def integer_adjugate(M):
    """Fraction-free Gauss-Jordan on a square integer matrix.

    Returns ``(adj, det)`` with ``M adj = det I``; ``det == 0`` means ``M`` is
    singular (``adj`` is then ``None``). Every division is exact because each
    intermediate entry is a minor of ``[M | I]``.
    """
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    prev = 1
    sign = 1
    for k in range(n):
        piv = k
        while piv < n and not aug[piv][k]:
            piv += 1
        if piv == n:
            return None, 0
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        pk = aug[k]
        p = pk[k]
        nz = [j for j in range(2 * n) if pk[j]]
        for r in range(n):
            if r == k:
                continue
            row = aug[r]
            f = row[k]
            if f:
                for j in range(2 * n):
                    row[j] = p * row[j]
                for j in nz:
                    row[j] -= f * pk[j]
                for j in range(2 * n):
                    row[j] //= prev
            else:
                for j in range(2 * n):
                    row[j] = row[j] * p // prev
        prev = p
    # the left block is now prev * I; prev = det up to the swap sign
    det = prev * sign
    adj = [[x * sign for x in row[n:]] for row in aug]
    return adj, det
