# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops (see ``_pykernels`` for the reference)."""

from fractions import Fraction
from math import gcd

BACKEND = "cython"
_ZERO = Fraction(0)

cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil


cdef inline int _sign(unsigned long long a, unsigned long long b,
                      unsigned long long neg) nogil:
    cdef int swaps = 0
    cdef unsigned long long x = a >> 1
    while x:
        swaps += __builtin_popcountll(x & b)
        x >>= 1
    swaps += __builtin_popcountll(a & b & neg)
    return -1 if (swaps & 1) else 1


def blade_sign(a, b, neg_mask):
    return _sign(a, b, neg_mask)


def multiply_terms(dict ta, dict tb, neg_mask):
    cdef unsigned long long neg = neg_mask
    cdef unsigned long long ma, mb
    cdef dict out = {}
    cdef list lb = list(tb.items())
    cdef Py_ssize_t j, nb = len(lb)
    for pa, ca in ta.items():
        ma = pa
        for j in range(nb):
            pb, cb = lb[j]
            mb = pb
            c = ca * cb
            if _sign(ma, mb, neg) < 0:
                c = -c
            key = ma ^ mb
            v = out.get(key)
            out[key] = c if v is None else v + c
    return {m: c for m, c in out.items() if c}


cdef tuple _integer_rows(tuple M):
    den = 1
    for row in M:
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    return [[x.numerator * (den // x.denominator) for x in row] for row in M], den


def matmul(tuple A, tuple B):
    if not A:
        return ()
    cdef Py_ssize_t m = len(B[0]) if B else 0
    cdef Py_ssize_t k, j, t, n, nk
    cdef list acc, rows = [], ai, bi, bnz, nzk, arow
    ai, da = _integer_rows(A)
    bi, db = _integer_rows(B)
    bnz = [[(j, b) for j, b in enumerate(row) if b] for row in bi]
    den = da * db
    for arow in ai:
        acc = [0] * m
        n = len(arow)
        for k in range(n):
            a = arow[k]
            if a:
                nzk = bnz[k]
                nk = len(nzk)
                for t in range(nk):
                    j, b = nzk[t]
                    acc[j] = acc[j] + a * b
        if den == 1:
            rows.append(tuple([Fraction(v) if v else _ZERO for v in acc]))
        else:
            rows.append(tuple([Fraction(v, den) if v else _ZERO for v in acc]))
    return tuple(rows)


def reduce_rows(rows, ncols):
    cdef dict pivots = {}
    cdef dict occ = {}
    cdef dict r, orow
    for raw in rows:
        r = {c: Fraction(v) for c, v in raw.items() if v}
        for c in [c for c in r if c in pivots]:
            f = r.get(c)
            if not f:
                continue
            for cc, vv in (<dict>pivots[c]).items():
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


def integer_adjugate(list M):
    cdef Py_ssize_t n = len(M)
    cdef Py_ssize_t n2 = 2 * n
    cdef Py_ssize_t i, j, k, r, piv, t, nnz
    cdef list aug = [], row, pk, nz
    cdef int sign = 1
    for i in range(n):
        row = list(M[i]) + [0] * n
        row[n + i] = 1
        aug.append(row)
    prev = 1
    for k in range(n):
        piv = k
        while piv < n and not (<list>aug[piv])[k]:
            piv += 1
        if piv == n:
            return None, 0
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        pk = aug[k]
        p = pk[k]
        nz = [j for j in range(n2) if pk[j]]
        nnz = len(nz)
        for r in range(n):
            if r == k:
                continue
            row = aug[r]
            f = row[k]
            if f:
                for j in range(n2):
                    row[j] = p * row[j]
                for t in range(nnz):
                    j = nz[t]
                    row[j] = row[j] - f * pk[j]
                for j in range(n2):
                    row[j] = row[j] // prev
            else:
                for j in range(n2):
                    row[j] = row[j] * p // prev
        prev = p
    det = prev * sign
    adj = [[x * sign for x in (<list>aug[i])[n:]] for i in range(n)]
    return adj, det
